"""Pure-Python versions of the compiled kernels in ``_ckernels.pyx``.

Selected automatically when the extension is not built, or when
``FLIPFORGE_PURE=1`` is set.  Outputs are byte-for-byte identical.
"""

from __future__ import annotations

from collections.abc import Sequence


def _walk(n, rot, s, t, direction, best):
    label = [0] * n
    label[s] = 1
    nxt = 2
    ref = {s: t}
    queue = [s]
    code = []
    smaller = best is None
    pos = 0
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        r = rot[x]
        d = len(r)
        p = r.index(ref[x])
        for k in range(d):
            y = r[(p + direction * k) % d]
            if not label[y]:
                label[y] = nxt
                nxt += 1
                ref[y] = x
                queue.append(y)
            val = label[y]
            if not smaller:
                b = best[pos]
                if val < b:
                    smaller = True
                elif val > b:
                    return None
            code.append(val)
            pos += 1
        if not smaller:
            if best[pos] > 0:
                smaller = True
        code.append(0)
        pos += 1
    return code if smaller else None


def canonical_code(n: int, offsets: Sequence[int], nbrs: Sequence[int]) -> bytes:
    rot = [list(nbrs[offsets[v]:offsets[v + 1]]) for v in range(n)]
    best = None
    for s in range(n):
        for t in rot[s]:
            for direction in (1, -1):
                code = _walk(n, rot, s, t, direction, best)
                if code is not None:
                    best = code
    words = [n] + (best or [])
    return b"".join(w.to_bytes(4, "big") for w in words)


def triangles(n: int, offsets: Sequence[int], nbrs: Sequence[int]) -> list[tuple[int, int, int]]:
    adj = [set(nbrs[offsets[v]:offsets[v + 1]]) for v in range(n)]
    out = []
    for u in range(n):
        nu = adj[u]
        found = []
        for v in nu:
            if v <= u:
                continue
            for w in adj[v]:
                if w > v and w in nu:
                    found.append((u, v, w))
        found.sort()
        out.extend(found)
    return out
