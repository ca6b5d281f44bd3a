"""Pure-Python versions of the finite-field inner loops."""


def poly_mul_mod(a, b, m):
    """Product of two coefficient lists (constant first) with entries reduced mod m.

    Uses Kronecker substitution: both operands are packed into one big int,
    multiplied once, and unpacked.
    """
    if not a or not b:
        return []
    n = min(len(a), len(b))
    bits = (2 * (m - 1).bit_length() + n.bit_length()) + 1
    mask = (1 << bits) - 1
    x = 0
    for c in reversed(a):
        x = (x << bits) | (c % m)
    y = 0
    for c in reversed(b):
        y = (y << bits) | (c % m)
    z = x * y
    out = []
    for _ in range(len(a) + len(b) - 1):
        out.append((z & mask) % m)
        z >>= bits
    return out


def count_points_fp(a2, a4, a6, p):
    """#E(F_p) for y^2 = x^3 + a2 x^2 + a4 x + a6, point at infinity included."""
    a2 %= p
    a4 %= p
    a6 %= p
    nsq = bytearray(p)
    for y in range(p):
        nsq[y * y % p] += 1
    total = 1
    for x in range(p):
        total += nsq[(((x + a2) * x + a4) * x + a6) % p]
    return total
