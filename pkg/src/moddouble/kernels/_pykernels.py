"""Pure-Python normal-ordering kernels (reference and fallback)."""


def _lower_entries(skew):
    n = len(skew)
    return [(j, i, skew[j][i]) for j in range(n) for i in range(j) if skew[j][i]]


def pair_product(exps_a, exps_b, skew, weights=None, max_deg=0):
    """Normal-order every product of a monomial of ``a`` with one of ``b``.

    ``exps_a`` and ``exps_b`` are sequences of integer exponent tuples on a
    lattice with skew matrix ``skew`` (``g_i g_j = q^(2 skew[i][j]) g_j g_i``).
    Moving ``g_j^x`` (j > i) to the right of ``g_i^y`` costs
    ``q^(2 skew[j][i] x y)``, so the whole product phase is the bilinear form
    ``2 * sum_{j>i} skew[j][i] x_j y_i``.

    Returns ``{out_exponents: [(ia, ib, qexp), ...]}``. With ``weights`` given,
    pairs whose graded degree exceeds ``max_deg`` are skipped.
    """
    n = len(skew)
    lower = _lower_entries(skew)
    if weights is not None:
        deg_a = [sum(w * e for w, e in zip(weights, x)) for x in exps_a]
        deg_b = [sum(w * e for w, e in zip(weights, y)) for y in exps_b]
    out = {}
    rng = range(n)
    for ia, x in enumerate(exps_a):
        u = [0] * n
        for j, i, s in lower:
            u[i] += s * x[j]
        for ib, y in enumerate(exps_b):
            if weights is not None and deg_a[ia] + deg_b[ib] > max_deg:
                continue
            ph = 0
            for i in rng:
                ph += u[i] * y[i]
            key = tuple([x[i] + y[i] for i in rng])
            entry = out.get(key)
            if entry is None:
                out[key] = [(ia, ib, 2 * ph)]
            else:
                entry.append((ia, ib, 2 * ph))
    return out


def monomial_phase(x, y, skew):
    """q-exponent picked up by normal-ordering the product of two monomials."""
    n = len(skew)
    ph = 0
    for j in range(n):
        if x[j]:
            for i in range(j):
                ph += skew[j][i] * x[j] * y[i]
    return 2 * ph
