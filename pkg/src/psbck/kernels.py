"""Hot loops over operation tables.

Each function is compiled with numba when available (see ``_accel``) and
otherwise runs as ordinary Python over numpy arrays.  Tables are int64
``(n, n)`` arrays; ``-1`` marks an unassigned cell during search.
"""

import numpy as np

from ._accel import njit

# state_flags bits
IS1, IS2, IS2P, IS3, HOM, IDEM = 1, 2, 4, 8, 16, 32
# ds_flags bits
DS, NORMAL, COMM = 1, 2, 4


@njit
def equational_ok(a, s, top):
    n = a.shape[0]
    for x in range(n):
        if a[top, x] != x or s[top, x] != x or a[x, top] != top:
            return False
    for x in range(n):
        for y in range(x + 1, n):
            if a[x, y] == top and a[y, x] == top:
                return False
    for x in range(n):
        for y in range(n):
            axy = a[x, y]
            sxy = s[x, y]
            for z in range(n):
                if s[axy, s[a[y, z], a[x, z]]] != top:
                    return False
                if a[sxy, a[s[y, z], s[x, z]]] != top:
                    return False
    return True


@njit
def commutative_ok(a, s):
    n = a.shape[0]
    for x in range(n):
        for y in range(n):
            if s[a[x, y], y] != s[a[y, x], x]:
                return False
            if a[s[x, y], y] != a[s[y, x], x]:
                return False
    return True


@njit
def ds_flags(a, s, top, mem):
    """DS / NORMAL / COMM bits for the subset with boolean membership ``mem``."""
    n = a.shape[0]
    out = 0
    is_ds = mem[top]
    if is_ds:
        for x in range(n):
            if not mem[x]:
                continue
            for y in range(n):
                if not mem[y] and (mem[a[x, y]] or mem[s[x, y]]):
                    is_ds = False
                    break
            if not is_ds:
                break
    if not is_ds:
        return 0
    out |= DS
    normal = True
    comm = True
    for x in range(n):
        for y in range(n):
            if mem[a[x, y]] != mem[s[x, y]]:
                normal = False
            if mem[a[y, x]] and not mem[a[s[a[x, y], y], x]]:
                comm = False
            if mem[s[y, x]] and not mem[s[a[s[x, y], y], x]]:
                comm = False
    if normal:
        out |= NORMAL
    if comm:
        out |= COMM
    return out


@njit
def state_flags(a, s, top, mu):
    n = a.shape[0]
    is1 = True
    is2 = True
    is2p = True
    is3 = True
    hom = mu[top] == top
    idem = True
    for x in range(n):
        if mu[mu[x]] != mu[x]:
            idem = False
        for y in range(n):
            axy = a[x, y]
            sxy = s[x, y]
            mx = mu[x]
            my = mu[y]
            if axy == top and a[mx, my] != top:
                is1 = False
            if mu[axy] != a[mu[s[axy, y]], my] or mu[sxy] != s[mu[a[sxy, y]], my]:
                is2 = False
            if mu[axy] != a[mu[s[a[y, x], x]], my] or mu[sxy] != s[mu[a[s[y, x], x]], my]:
                is2p = False
            if mu[a[mx, my]] != a[mx, my] or mu[s[mx, my]] != s[mx, my]:
                is3 = False
            if mu[axy] != a[mx, my] or mu[sxy] != s[mx, my]:
                hom = False
    out = 0
    if is1:
        out |= IS1
    if is2:
        out |= IS2
    if is2p:
        out |= IS2P
    if is3:
        out |= IS3
    if hom:
        out |= HOM
    if idem:
        out |= IDEM
    return out


@njit
def kernel_flags(a, s, top, mu):
    n = a.shape[0]
    mem = np.zeros(n, dtype=np.bool_)
    for x in range(n):
        mem[x] = mu[x] == top
    return ds_flags(a, s, top, mem)


@njit
def all_map_flags(a, s, top):
    """Flags for every one of the n**n self-maps, in lexicographic image order.

    Returns ``(maps, state_bits, kernel_bits)``.
    """
    n = a.shape[0]
    total = n ** n
    maps = np.empty((total, n), dtype=np.int64)
    sbits = np.empty(total, dtype=np.int64)
    kbits = np.empty(total, dtype=np.int64)
    mu = np.zeros(n, dtype=np.int64)
    for k in range(total):
        r = k
        for i in range(n - 1, -1, -1):
            mu[i] = r % n
            r //= n
        maps[k] = mu
        sbits[k] = state_flags(a, s, top, mu)
        kbits[k] = kernel_flags(a, s, top, mu)
    return maps, sbits, kbits


@njit
def candidate_maps(a, s, top, budget):
    """Backtracking over self-maps with mu(top)=top, idempotence and monotonicity pruning.

    Returns ``(maps, count, nodes)``; ``count == -1`` means the node budget ran out.
    Every returned map still has to pass the full state or morphism check.
    """
    n = a.shape[0]
    cap = 64
    out = np.empty((cap, n), dtype=np.int64)
    count = 0
    nodes = 0
    mu = -np.ones(n, dtype=np.int64)
    mu[top] = top
    order = np.empty(n - 1, dtype=np.int64)
    j = 0
    for i in range(n):
        if i != top:
            order[j] = i
            j += 1
    m = n - 1
    if m == 0:
        out[0] = mu
        return out[:1].copy(), 1, 1
    val = -np.ones(m, dtype=np.int64)
    d = 0
    while d >= 0:
        x = order[d]
        v = val[d] + 1
        found = False
        while v < n:
            nodes += 1
            if nodes > budget:
                return out[:count].copy(), -1, nodes
            mu[x] = v
            ok = True
            # idempotence on assigned points
            for p in range(n):
                q = mu[p]
                if q >= 0 and mu[q] >= 0 and mu[q] != q:
                    ok = False
                    break
            if ok:
                # monotonicity on assigned pairs
                for p in range(n):
                    if mu[p] < 0:
                        continue
                    if a[p, x] == top and a[mu[p], v] != top:
                        ok = False
                        break
                    if a[x, p] == top and a[v, mu[p]] != top:
                        ok = False
                        break
            if ok:
                found = True
                break
            v += 1
        if not found:
            mu[x] = -1
            val[d] = -1
            d -= 1
            continue
        val[d] = v
        if d == m - 1:
            if count == cap:
                bigger = np.empty((cap * 2, n), dtype=np.int64)
                bigger[:cap] = out
                out = bigger
                cap *= 2
            out[count] = mu
            count += 1
        else:
            d += 1
            val[d] = -1
    return out[:count].copy(), count, nodes


# -- model search ----------------------------------------------------------


@njit
def _partial_ok(A, S, top):
    """Sound necessary conditions on a partially filled table pair (-1 = unknown)."""
    n = A.shape[0]
    for x in range(n):
        for y in range(n):
            axy = A[x, y]
            sxy = S[x, y]
            if axy >= 0 and sxy >= 0 and ((axy == top) != (sxy == top)):
                return False
            if x < y and axy == top and A[y, x] == top:
                return False
            ayx = A[y, x]
            if ayx >= 0:
                t = A[x, ayx]
                if t >= 0 and t != top:
                    return False
            syx = S[y, x]
            if syx >= 0:
                t = A[x, syx]
                if t >= 0 and t != top:
                    return False
            for z in range(n):
                # psBCK1'
                q = A[y, z]
                r = A[x, z]
                if axy >= 0 and q >= 0 and r >= 0:
                    u = S[q, r]
                    if u >= 0:
                        t = S[axy, u]
                        if t >= 0 and t != top:
                            return False
                # psBCK2'
                q = S[y, z]
                r = S[x, z]
                if sxy >= 0 and q >= 0 and r >= 0:
                    u = A[q, r]
                    if u >= 0:
                        t = A[sxy, u]
                        if t >= 0 and t != top:
                            return False
                # exchange x->(y~>z) = y~>(x->z)
                p = S[y, z]
                r = A[x, z]
                if p >= 0 and r >= 0:
                    l = A[x, p]
                    rr = S[y, r]
                    if l >= 0 and rr >= 0 and l != rr:
                        return False
                p = A[y, z]
                r = S[x, z]
                if p >= 0 and r >= 0:
                    l = S[x, p]
                    rr = A[y, r]
                    if l >= 0 and rr >= 0 and l != rr:
                        return False
    return True


@njit
def search_models(n, commutative_only, budget):
    """Pruned backtracking over table pairs on {0..n-1} with top = n-1.

    Returns ``(arrows, squiggles, count, nodes)``; ``count == -1`` when the
    node budget is exhausted.
    """
    top = n - 1
    A = -np.ones((n, n), dtype=np.int64)
    S = -np.ones((n, n), dtype=np.int64)
    for x in range(n):
        A[top, x] = x
        S[top, x] = x
        A[x, top] = top
        S[x, top] = top
        A[x, x] = top
        S[x, x] = top
    # free cells: off-diagonal, non-top; arrow row then squiggle row
    m = 2 * (n - 1) * (n - 2) if n > 1 else 0
    ct = np.empty(max(m, 1), dtype=np.int64)
    cx = np.empty(max(m, 1), dtype=np.int64)
    cy = np.empty(max(m, 1), dtype=np.int64)
    k = 0
    for x in range(n - 1):
        for t in range(2):
            for y in range(n - 1):
                if x != y:
                    ct[k] = t
                    cx[k] = x
                    cy[k] = y
                    k += 1
    cap = 64
    outA = np.empty((cap, n, n), dtype=np.int64)
    outS = np.empty((cap, n, n), dtype=np.int64)
    count = 0
    nodes = 0
    if m == 0:
        if equational_ok(A, S, top) and (not commutative_only or commutative_ok(A, S)):
            outA[0] = A
            outS[0] = S
            count = 1
        return outA[:count].copy(), outS[:count].copy(), count, 1
    val = -np.ones(m, dtype=np.int64)
    d = 0
    while d >= 0:
        t = ct[d]
        x = cx[d]
        y = cy[d]
        v = val[d] + 1
        found = False
        while v < n:
            nodes += 1
            if nodes > budget:
                return outA[:count].copy(), outS[:count].copy(), -1, nodes
            if t == 0:
                A[x, y] = v
            else:
                S[x, y] = v
            if _partial_ok(A, S, top):
                found = True
                break
            v += 1
        if not found:
            if t == 0:
                A[x, y] = -1
            else:
                S[x, y] = -1
            val[d] = -1
            d -= 1
            continue
        val[d] = v
        if d == m - 1:
            if equational_ok(A, S, top) and (not commutative_only or commutative_ok(A, S)):
                if count == cap:
                    biggerA = np.empty((cap * 2, n, n), dtype=np.int64)
                    biggerS = np.empty((cap * 2, n, n), dtype=np.int64)
                    biggerA[:cap] = outA
                    biggerS[:cap] = outS
                    outA = biggerA
                    outS = biggerS
                    cap *= 2
                outA[count] = A
                outS[count] = S
                count += 1
        else:
            d += 1
            val[d] = -1
    return outA[:count].copy(), outS[:count].copy(), count, nodes
