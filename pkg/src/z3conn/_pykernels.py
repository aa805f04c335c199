"""Pure-Python reference kernels.

Same signatures and results as the compiled ``_kernels`` extension; used
when the extension is not built or ``Z3CONN_PURE_PYTHON`` is set.

Boundary demands are packed as base-k integers over vertices ``0..n-2``
(the last vertex is implied by the zero-sum condition).  Every kernel
returns a bytearray of length ``k**(n-1)`` with a 1 at each reachable
index.  Edge ``j`` runs from ``tails[j]`` to ``heads[j]`` in the
reference orientation.
"""

from __future__ import annotations


def _powers(n, k):
    pw = [0] * n
    p = 1
    for v in range(n - 1):
        pw[v] = p
        p *= k
    # vertex n-1 is not encoded: weight 0 so updates to it are ignored
    return pw, p


def sweep_boundaries(n, k, tails, heads):
    """Reachable boundaries by processing edges one at a time.

    After edge j the set holds every boundary of a nowhere-zero assignment
    on edges 0..j.  Cost is O(m * (k-1) * k**(n-1)).
    """
    pw, size = _powers(n, k)
    cur = bytearray(size)
    cur[0] = 1
    for t, h in zip(tails, heads):
        nxt = bytearray(size)
        pt, ph = pw[t], pw[h]
        for idx in range(size):
            if not cur[idx]:
                continue
            dt = (idx // pt) % k if pt else 0
            dh = (idx // ph) % k if ph else 0
            for f in range(1, k):
                j = idx
                if pt:
                    j += ((dt + f) % k - dt) * pt
                if ph:
                    j += ((dh - f) % k - dh) * ph
                nxt[j] = 1
        cur = nxt
    return cur


def gray_boundaries(n, k, tails, heads):
    """Visit all (k-1)**m nowhere-zero assignments in reflected Gray order.

    Consecutive assignments differ in one edge by +-1, so each step touches
    two vertex accumulators.  Stops early once every index is reached.
    """
    m = len(tails)
    pw, size = _powers(n, k)
    seen = bytearray(size)
    d = [0] * n
    for t, h in zip(tails, heads):
        d[t] = (d[t] + 1) % k
        d[h] = (d[h] - 1) % k
    idx = sum(d[v] * pw[v] for v in range(n - 1))
    seen[idx] = 1
    count = 1
    r = k - 1
    if r < 2 or m == 0:
        return seen
    a = [0] * m
    o = [1] * m
    foc = list(range(m + 1))
    while True:
        j = foc[0]
        foc[0] = 0
        if j == m:
            break
        step = o[j]
        a[j] += step
        if a[j] == 0 or a[j] == r - 1:
            o[j] = -step
            foc[j] = foc[j + 1]
            foc[j + 1] = j + 1
        t, h = tails[j], heads[j]
        old = d[t]
        d[t] = (old + step) % k
        idx += (d[t] - old) * pw[t]
        old = d[h]
        d[h] = (old - step) % k
        idx += (d[h] - old) * pw[h]
        if not seen[idx]:
            seen[idx] = 1
            count += 1
            if count == size:
                break
    return seen


def orientation_boundaries(n, tails, heads):
    """Reachable (outdegree - indegree) mod 3 vectors over all 2**m orientations.

    Binary Gray code over orientation bits; flipping edge j moves 2 units
    of imbalance between its endpoints.
    """
    m = len(tails)
    k = 3
    pw, size = _powers(n, k)
    seen = bytearray(size)
    d = [0] * n
    for t, h in zip(tails, heads):
        d[t] = (d[t] + 1) % k
        d[h] = (d[h] - 1) % k
    idx = sum(d[v] * pw[v] for v in range(n - 1))
    seen[idx] = 1
    count = 1
    forward = [True] * m
    for i in range(1, 1 << m):
        j = (i & -i).bit_length() - 1
        step = -2 if forward[j] else 2
        forward[j] = not forward[j]
        t, h = tails[j], heads[j]
        old = d[t]
        d[t] = (old + step) % k
        idx += (d[t] - old) * pw[t]
        old = d[h]
        d[h] = (old - step) % k
        idx += (d[h] - old) * pw[h]
        if not seen[idx]:
            seen[idx] = 1
            count += 1
            if count == size:
                break
    return seen
