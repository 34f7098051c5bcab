"""Pure-Python hot kernels. ``_ckernels.pyx`` mirrors this module line for line.

Truncated-algebra elements are dicts ``{mask: coeffs}`` where ``mask`` is a
squarefree monomial in z (bit i set <=> z_i present) and ``coeffs`` is a list
of x-polynomial coefficients, lowest degree first.
"""


def _axpy(acc, mask, poly, scale, shift):
    # acc[mask] += scale * x**shift * poly
    cur = acc.get(mask)
    need = len(poly) + shift
    if cur is None:
        cur = [0] * need
        acc[mask] = cur
    elif len(cur) < need:
        cur.extend([0] * (need - len(cur)))
    for k, c in enumerate(poly):
        if c:
            cur[k + shift] += scale * c


def affine_mul_acc(acc, elem, c0, c1, zterms):
    """acc += elem * (c0 + c1*x + sum(a * z_bit for bit, a in zterms))."""
    for mask, poly in elem.items():
        if c0:
            _axpy(acc, mask, poly, c0, 0)
        if c1:
            _axpy(acc, mask, poly, c1, 1)
        for bit, a in zterms:
            if not mask & bit:
                _axpy(acc, mask | bit, poly, a, 0)


def subset_mul(e1, e2):
    """Product in Q[x][z]/(z_i^2): only disjoint monomials survive."""
    out = {}
    for m1, p1 in e1.items():
        for m2, p2 in e2.items():
            if m1 & m2:
                continue
            m = m1 | m2
            cur = out.get(m)
            need = len(p1) + len(p2) - 1
            if cur is None:
                cur = [0] * need
                out[m] = cur
            elif len(cur) < need:
                cur.extend([0] * (need - len(cur)))
            for i, a in enumerate(p1):
                if a:
                    for j, b in enumerate(p2):
                        if b:
                            cur[i + j] += a * b
    return out


def sign_at(coeffs, num, den):
    """Sign of sum(c_k (num/den)^k) for integer c_k, den > 0, via integer Horner."""
    n = len(coeffs) - 1
    acc = 0
    dpow = 1
    for k in range(n, -1, -1):
        acc = acc * num + coeffs[k] * dpow
        dpow *= den
    # acc == den**n * p(num/den)
    return (acc > 0) - (acc < 0)


def sign_variations(seq, num, den):
    """Sign changes of an integer-coefficient polynomial sequence at num/den (zeros dropped)."""
    count = 0
    last = 0
    for coeffs in seq:
        s = sign_at(coeffs, num, den)
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def signed_pairing(e1, e2, m):
    """sum over disjoint S, T of (-1)^(|S|+|T|) e1[S] * e2[T], as an x-coefficient list.

    G(U) = sum_{T subset U} (-1)^|T| e2[T] is built for every U by a subset-sum
    transform, then each S in e1 pairs with G(complement of S).
    """
    full = (1 << m) - 1
    g = [None] * (full + 1)
    for mask, poly in e2.items():
        g[mask] = [-c for c in poly] if bin(mask).count("1") & 1 else list(poly)
    bit = 1
    while bit <= full:
        for mask in range(full + 1):
            if mask & bit and g[mask ^ bit] is not None:
                src = g[mask ^ bit]
                cur = g[mask]
                if cur is None:
                    g[mask] = list(src)
                else:
                    if len(cur) < len(src):
                        cur.extend([0] * (len(src) - len(cur)))
                    for k, c in enumerate(src):
                        cur[k] += c
        bit <<= 1
    out = []
    for mask, poly in e1.items():
        other = g[full ^ mask]
        if other is None:
            continue
        s = -1 if bin(mask).count("1") & 1 else 1
        need = len(poly) + len(other) - 1
        if len(out) < need:
            out.extend([0] * (need - len(out)))
        for i, a in enumerate(poly):
            if a:
                a = s * a
                for j, b in enumerate(other):
                    if b:
                        out[i + j] += a * b
    return out
