"""Independent reference computations shared by the test modules."""

from hassett_ec.collection import LineBundleItem, TorsionItem


def half_rank(n):
    return (n - 1) // 2 if n % 2 else (n - 2) // 2


def collection_members(n):
    """Membership conditions checked directly over bitmasks."""
    s = half_rank(n)
    out = set()
    for mask in range(1 << n):
        E = tuple(i + 1 for i in range(n) if mask >> i & 1)
        e = len(E)
        for p in range(-2 * n, 2 * n + 1):
            if (e + p) % 2:
                continue
            bound, tail = (s, n - e) if n % 2 else (s + 1, n + 1 - e)
            if abs(p) + min(e, tail) <= bound:
                out.add(LineBundleItem(E, p))
    if n % 2 == 0:
        for mask in range(1 << n):
            if bin(mask).count("1") != s + 1:
                continue
            T = tuple(i + 1 for i in range(n) if mask >> i & 1)
            for a in range(s + 1):
                for b in range(s + 1):
                    if (0 < a <= s and 0 < b <= s) or (a == 0 and 0 < b < (s + 1) / 2) \
                            or (b == 0 and 0 < a < (s + 1) / 2):
                        out.add(TorsionItem(T, a, b))
    return out
