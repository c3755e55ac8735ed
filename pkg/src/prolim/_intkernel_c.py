"""Exact integer matrix kernel: Smith normal form with transforms and friends.

Everything here works on plain lists of lists of Python ints (rows), so
arbitrary precision is preserved throughout.  This module is the hot inner
loop of the whole package; it is deliberately free of imports from the rest
of the package so the same source can be compiled standalone (see
prolim._backend).
"""


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zero_matrix(m, n):
    return [[0] * n for _ in range(m)]


def mat_copy(a):
    return [row[:] for row in a]


def mat_mul(a, b):
    m = len(a)
    n = len(b[0]) if b else 0
    k = len(b)
    out = [[0] * n for _ in range(m)]
    for i in range(m):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                for j in range(n):
                    oi[j] += c * bt[j]
    return out


def mat_vec(a, v):
    out = []
    for row in a:
        s = 0
        for c, x in zip(row, v):
            if c:
                s += c * x
        out.append(s)
    return out


def mat_transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def smith_with_transforms(a):
    """Return (u, d, v, uinv, vinv) with u*a*v = d in Smith normal form.

    d is diagonal with nonnegative entries d1 | d2 | ... followed by zeros;
    u, v are unimodular and uinv, vinv are their exact inverses.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [row[:] for row in a]
    u = identity_matrix(m)
    uinv = identity_matrix(m)
    v = identity_matrix(n)
    vinv = identity_matrix(n)

    def row_sub(i, j, q):
        # row i -= q * row j on d and u; uinv absorbs the inverse op
        if q:
            di = d[i]
            dj = d[j]
            for c in range(n):
                di[c] -= q * dj[c]
            ui = u[i]
            uj = u[j]
            for c in range(m):
                ui[c] -= q * uj[c]
            for r in range(m):
                uir = uinv[r]
                uir[j] += q * uir[i]

    def row_swap(i, j):
        if i != j:
            d[i], d[j] = d[j], d[i]
            u[i], u[j] = u[j], u[i]
            for r in range(m):
                uir = uinv[r]
                uir[i], uir[j] = uir[j], uir[i]

    def row_neg(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]
        for r in range(m):
            uinv[r][i] = -uinv[r][i]

    def col_sub(i, j, q):
        # col i -= q * col j on d and v; vinv absorbs the inverse op
        if q:
            for r in range(m):
                dr = d[r]
                dr[i] -= q * dr[j]
            for r in range(n):
                vr = v[r]
                vr[i] -= q * vr[j]
            vj = vinv[j]
            vi = vinv[i]
            for c in range(n):
                vj[c] += q * vi[c]

    def col_swap(i, j):
        if i != j:
            for r in range(m):
                dr = d[r]
                dr[i], dr[j] = dr[j], dr[i]
            for r in range(n):
                vr = v[r]
                vr[i], vr[j] = vr[j], vr[i]
            vinv[i], vinv[j] = vinv[j], vinv[i]

    t = 0
    size = m if m < n else n
    while t < size:
        pi = pj = -1
        best = 0
        for i in range(t, m):
            di = d[i]
            for j in range(t, n):
                x = di[j]
                if x:
                    ax = -x if x < 0 else x
                    if pi < 0 or ax < best:
                        best = ax
                        pi, pj = i, j
        if pi < 0:
            break
        row_swap(t, pi)
        col_swap(t, pj)
        while True:
            # Reduce the pivot column and row by the pivot.  A nonzero
            # remainder is strictly smaller than the pivot and gets swapped
            # in, so |pivot| strictly decreases; with no swaps, every
            # subtraction was exact and row/col t stay clean (only the
            # non-pivot rows and columns are modified).
            if d[t][t] < 0:
                row_neg(t)
            swapped = False
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    row_sub(i, t, q)
                    if d[i][t]:
                        row_swap(t, i)
                        swapped = True
                        break
            if swapped:
                continue
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    col_sub(j, t, q)
                    if d[t][j]:
                        col_swap(t, j)
                        swapped = True
                        break
            if swapped:
                continue
            if any(d[i][t] for i in range(t + 1, m)) or any(
                d[t][j] for j in range(t + 1, n)
            ):
                continue
            # pivot must divide every remaining entry (invariant-factor chain)
            pv = d[t][t]
            offender = -1
            for i in range(t + 1, m):
                di = d[i]
                for j in range(t + 1, n):
                    if di[j] % pv:
                        offender = i
                        break
                if offender >= 0:
                    break
            if offender < 0:
                break
            row_sub(t, offender, -1)  # pull the offending row into row t
        t += 1
    return u, d, v, uinv, vinv


def smith_diagonal(d):
    m = len(d)
    n = len(d[0]) if m else 0
    return [d[i][i] for i in range(min(m, n))]


def _solve_from_snf(u, d, v, b):
    m = len(d)
    n = len(d[0]) if m else 0
    c = mat_vec(u, b)
    y = [0] * n
    for i in range(m):
        di = d[i][i] if i < n else 0
        if di:
            if c[i] % di:
                return None
            y[i] = c[i] // di
        elif c[i]:
            return None
    return mat_vec(v, y)


def solve(a, b):
    """One integer solution x of a*x = b, or None if none exists."""
    u, d, v, _uinv, _vinv = smith_with_transforms(a)
    return _solve_from_snf(u, d, v, b)


def solve_matrix(a, b_cols):
    """Solve a*X = B columnwise; list of solution columns, or None."""
    u, d, v, _uinv, _vinv = smith_with_transforms(a)
    out = []
    for col in b_cols:
        x = _solve_from_snf(u, d, v, col)
        if x is None:
            return None
        out.append(x)
    return out


def kernel_columns(a):
    """Basis (list of columns) of the integer kernel lattice {x : a*x = 0}."""
    m = len(a)
    n = len(a[0]) if m else 0
    if n == 0:
        return []
    if m == 0:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    _u, d, v, _uinv, _vinv = smith_with_transforms(a)
    r = 0
    for i in range(min(m, n)):
        if d[i][i]:
            r += 1
    return [[v[row][j] for row in range(n)] for j in range(r, n)]


def column_lattice_basis(a):
    """Basis (list of columns) of the lattice spanned by the columns of a."""
    m = len(a)
    if m == 0:
        return []
    _u, d, _v, uinv, _vinv = smith_with_transforms(a)
    n = len(a[0])
    out = []
    for i in range(min(m, n)):
        di = d[i][i]
        if di:
            out.append([di * uinv[r][i] for r in range(m)])
    return out


def det_via_smith(a):
    """|det a| for square a (0 if singular)."""
    n = len(a)
    if n == 0:
        return 1
    _u, d, _v, _ui, _vi = smith_with_transforms(a)
    p = 1
    for i in range(n):
        p *= d[i][i]
        if not p:
            return 0
    return p if p >= 0 else -p


def hermite_column_basis(cols, dim):
    """Column-style Hermite basis of the lattice spanned by `cols` in Z^dim.

    Echelon columns with positive pivots, pivot rows increasing, and other
    columns' entries at each pivot row reduced into [0, pivot): canonical
    for the lattice, so directly comparable.
    """
    work = [list(c) for c in cols if any(c)]
    basis = []
    for r in range(dim):
        live = [c for c in work if c[r]]
        rest = [c for c in work if not c[r]]
        if not live:
            work = rest
            continue
        piv = live[0]
        for c in live[1:]:
            while c[r]:
                q = piv[r] // c[r]
                for k in range(dim):
                    piv[k] -= q * c[k]
                piv, c = c, piv
            if any(c):
                rest.append(c)
        if piv[r] < 0:
            piv = [-x for x in piv]
        for b in basis:
            q = b[r] // piv[r]
            if q:
                for k in range(dim):
                    b[k] -= q * piv[k]
        basis.append(piv)
        work = rest
    return basis


def reduce_mod_lattice(vec, basis):
    """Canonical representative of vec modulo the lattice (Hermite basis).

    Symmetric reduction at each pivot row: the entry there ends up in
    (-pivot/2, pivot/2], deterministically, preferring the positive tie.
    """
    x = list(vec)
    for col in basis:
        r = 0
        while r < len(col) and col[r] == 0:
            r += 1
        if r == len(col):
            continue
        h = col[r]
        q = (2 * x[r] + h - 1) // (2 * h)
        if q:
            for k in range(len(x)):
                x[k] -= q * col[k]
    return x


def charpoly(a):
    """Coefficients [c0, ..., cn] of det(tI - a), ascending, exact over Z.

    Faddeev-LeVerrier; every division is exact.
    """
    n = len(a)
    if n == 0:
        return [1]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m_prev = identity_matrix(n)
    for k in range(1, n + 1):
        am = mat_mul(a, m_prev)
        tr = 0
        for i in range(n):
            tr += am[i][i]
        c = -tr // k
        coeffs[n - k] = c
        if k < n:
            m_prev = [row[:] for row in am]
            for i in range(n):
                m_prev[i][i] += c
    return coeffs


def poly_at_matrix(coeffs, a):
    """Evaluate a polynomial (ascending integer coeffs) at a square matrix."""
    n = len(a)
    out = zero_matrix(n, n)
    power = identity_matrix(n)
    for k, c in enumerate(coeffs):
        if c:
            for i in range(n):
                oi = out[i]
                pi = power[i]
                for j in range(n):
                    oi[j] += c * pi[j]
        if k + 1 < len(coeffs):
            power = mat_mul(power, a)
    return out
