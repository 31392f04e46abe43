"""Pure-Python kernels; the compiled ``_kernels`` module mirrors these exactly.

Both operate on a dense code array: ``codes[i]`` is the meaning code of the
``i``-th string in canonical order (``-1`` when not well formed), for every
string of length ``1..H`` over a ``k``-letter alphabet.  Because the
enumeration is length-major, comparing indices is comparing strings
canonically.
"""

IC_EXISTS = 0
IC_ALL_POSITIONS = 1
IC_RIGHT_EXTENSION = 2


def _layout(k, H):
    pw = [1] * (H + 2)
    for i in range(1, H + 2):
        pw[i] = pw[i - 1] * k
    off = [0] * (H + 2)
    for L in range(2, H + 2):
        off[L] = off[L - 1] + pw[L - 1]
    length = [0] * off[H + 1]
    for L in range(1, H + 1):
        for i in range(off[L], off[L + 1]):
            length[i] = L
    return pw, off, length


def sst_scan(codes, k, H):
    """Find the least bounded-SST violation.

    Substitutions are grouped by their frame ``(alpha, beta)`` and by the
    meaning class of the replaced factor.  Inside one group every result
    ``alpha v beta`` (with ``|alpha v beta| <= H``) must be ill formed, or all
    must be well formed with one meaning; otherwise the group holds a
    violation.  Only two candidates per violating group can be minimal: the
    first well-formed context paired with the first result that disagrees
    with it, and the first context of a different meaning paired with the
    first result overall.

    Returns ``(examined, best)`` where ``best`` is ``None`` or the tuple
    ``(context, result, u, v, alpha_len)`` of canonical indices minimising
    ``(|context| + |result|, context, result, |u|, u, v, alpha_len)``.
    """
    codes = [int(c) for c in codes]
    pw, off, length = _layout(k, H)
    assert len(codes) == off[H + 1]
    ncls = max(codes) + 1 if codes else 0
    stamp = [-1] * ncls
    fn = [0] * ncls
    fnv = [0] * ncls
    f1 = [0] * ncls
    f1v = [0] * ncls
    m1 = [0] * ncls
    r2 = [0] * ncls
    r2v = [0] * ncls
    best = None
    best_key = None
    examined = 0
    gid = 0
    for t in range(H):
        nv = off[H - t + 1]
        for la in range(t + 1):
            lb = t - la
            for a_val in range(pw[la]):
                for b_val in range(pw[lb]):
                    gid += 1
                    touched = []
                    for v in range(nv):
                        mu = codes[v]
                        if mu < 0:
                            continue
                        lv = length[v]
                        r = off[t + lv] + ((a_val * pw[lv] + v - off[lv]) * pw[lb] + b_val)
                        mr = codes[r]
                        examined += 1
                        if stamp[mu] != gid:
                            stamp[mu] = gid
                            fn[mu] = -1
                            f1[mu] = -1
                            r2[mu] = -1
                            touched.append(mu)
                        if mr < 0:
                            if fn[mu] < 0:
                                fn[mu] = r
                                fnv[mu] = v
                        elif f1[mu] < 0:
                            f1[mu] = r
                            f1v[mu] = v
                            m1[mu] = mr
                        elif r2[mu] < 0 and mr != m1[mu]:
                            r2[mu] = r
                            r2v[mu] = v
                    for mu in touched:
                        if f1[mu] < 0:
                            continue
                        # context = first member; result = first disagreeing
                        r, rv = fn[mu], fnv[mu]
                        if r2[mu] >= 0 and (r < 0 or r2[mu] < r):
                            r, rv = r2[mu], r2v[mu]
                        if r >= 0:
                            c, cv = f1[mu], f1v[mu]
                            key = (length[c] + length[r], c, r, length[cv], cv, rv, la)
                            if best_key is None or key < best_key:
                                best_key, best = key, (c, r, cv, rv, la)
                        if r2[mu] >= 0:
                            c, cv = r2[mu], r2v[mu]
                            r, rv = f1[mu], f1v[mu]
                            if 0 <= fn[mu] < r:
                                r, rv = fn[mu], fnv[mu]
                            key = (length[c] + length[r], c, r, length[cv], cv, rv, la)
                            if best_key is None or key < best_key:
                                best_key, best = key, (c, r, cv, rv, la)
    return examined, best


def ic_scan(codes, k, H, variant):
    """Find the canonically least member of length >= 2 failing the split
    property.

    Returns ``(examined, w, position)``; ``w`` is ``-1`` when the property
    holds.  ``position`` is the first failing split point for
    ``IC_ALL_POSITIONS`` and ``IC_RIGHT_EXTENSION`` and ``0`` for
    ``IC_EXISTS``.
    """
    codes = [int(c) for c in codes]
    pw, off, _ = _layout(k, H)
    examined = 0
    for L in range(2, H + 1):
        for val in range(pw[L]):
            w = off[L] + val
            if codes[w] < 0:
                continue
            examined += 1
            if variant == IC_RIGHT_EXTENSION:
                first_j = L - 1
            else:
                first_j = 1
            found = False
            for j in range(first_j, L):
                p = off[j] + val // pw[L - j]
                s = off[L - j] + val % pw[L - j]
                ok = codes[p] >= 0 and codes[s] >= 0
                if variant == IC_EXISTS:
                    if ok:
                        found = True
                        break
                elif not ok:
                    return examined, w, j
            if variant == IC_EXISTS and not found:
                return examined, w, 0
    return examined, -1, 0
