"""Integer row reduction on small dense matrices (lists of lists of ints)."""


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def hermite(a):
    """Row Hermite normal form.

    Returns ``(h, u, rank)`` with ``u`` unimodular, ``u @ a == h``, the first
    ``rank`` rows of ``h`` in echelon form with positive pivots and the other
    rows zero.
    """
    h = [list(r) for r in a]
    m = len(h)
    n = len(h[0]) if m else 0
    u = identity(m)
    row = 0
    pivots = []
    for col in range(n):
        if row == m:
            break
        while True:
            nz = [i for i in range(row, m) if h[i][col]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(h[i][col]))
            h[row], h[p] = h[p], h[row]
            u[row], u[p] = u[p], u[row]
            done = True
            for i in range(row + 1, m):
                if h[i][col]:
                    q = h[i][col] // h[row][col]
                    h[i] = [x - q * y for x, y in zip(h[i], h[row])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[row])]
                    if h[i][col]:
                        done = False
            if done:
                break
        if any(h[i][col] for i in range(row, m)):
            if h[row][col] < 0:
                h[row] = [-x for x in h[row]]
                u[row] = [-x for x in u[row]]
            for i in range(row):
                q = h[i][col] // h[row][col]
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[row])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[row])]
            pivots.append(col)
            row += 1
    return h, u, row


def solve_in_lattice(basis, v):
    """Integer ``c`` with ``c @ basis == v`` for an echelon ``basis``; None if none."""
    rest = list(v)
    coeffs = []
    for b in basis:
        col = next(j for j, x in enumerate(b) if x)
        if rest[col] % b[col]:
            return None
        q = rest[col] // b[col]
        coeffs.append(q)
        rest = [x - q * y for x, y in zip(rest, b)]
    if any(rest):
        return None
    return coeffs


def integer_kernel(a):
    """Saturated basis (rows) of ``{x in Z^n : a @ x == 0}``."""
    n = len(a[0]) if a else 0
    if not a:
        return identity(n)
    h, u, r = hermite(transpose(a))
    return [u[i] for i in range(r, n)]


def det(a):
    """Exact determinant (Bareiss)."""
    m = [list(r) for r in a]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def rank(a):
    return hermite(a)[2] if a else 0
