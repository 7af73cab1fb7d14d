"""Builds permutation generators for the embedded groups and writes data/groups/*.toml.

Each construction is a natural action; orders are checked by closure before writing.
"""
import itertools, os, random

OUT = os.path.join(os.path.dirname(__file__), "..", "data", "groups")


def closure(gens, deg):
    ident = tuple(range(deg))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[x[p]] for p in range(deg))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def cycles(p):
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        c, j = [], i
        while j not in seen:
            seen.add(j)
            c.append(j)
            j = p[j]
        out.append("(" + ",".join(map(str, c)) + ")")
    return "".join(out) or "()"


def two_generators(gens, deg, order, seed=1):
    """Replace a generating set by a random generating pair of products."""
    rng = random.Random(seed)
    def rand_elt():
        x = tuple(range(deg))
        for _ in range(30):
            g = rng.choice(gens)
            x = tuple(g[x[p]] for p in range(deg))
        return x
    for _ in range(2000):
        a, b = rand_elt(), rand_elt()
        if closure([a, b], deg) == order:
            return [a, b]
    raise RuntimeError("no generating pair found")


# ---- finite fields GF(p^k) as polynomial tuples ----
class GF:
    def __init__(self, p, k, modpoly):
        self.p, self.k, self.mod = p, k, modpoly  # modpoly: coeffs low->high, monic, len k+1
        self.elts = list(itertools.product(range(p), repeat=k))
        self.zero = tuple([0] * k)
        self.one = tuple([1] + [0] * (k - 1))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] += x * y
        for d in range(len(prod) - 1, self.k - 1, -1):
            c = prod[d] % self.p
            if c:
                for t in range(self.k + 1):
                    prod[d - self.k + t] -= c * self.mod[t]
        return tuple(x % self.p for x in prod[: self.k])

    def pow(self, a, e):
        r = self.one
        for _ in range(e):
            r = self.mul(r, a)
        return r


def proj_points(F, dim):
    pts = []
    for v in itertools.product(F.elts, repeat=dim):
        if all(x == F.zero for x in v):
            continue
        lead = next(x for x in v if x != F.zero)
        if lead == F.one:
            pts.append(v)
    return pts


def normalize(F, v):
    lead = next(x for x in v if x != F.zero)
    inv = next(y for y in F.elts if F.mul(lead, y) == F.one)
    return tuple(F.mul(x, inv) for x in v)


def mat_act(F, M, v):
    n = len(v)
    return tuple(
        F_sum(F, [F.mul(v[i], M[i][j]) for i in range(n)]) for j in range(n)
    )


def F_sum(F, xs):
    s = F.zero
    for x in xs:
        s = F.add(s, x)
    return s


def perm_from_matrix(F, M, pts):
    idx = {p: i for i, p in enumerate(pts)}
    return tuple(idx[normalize(F, mat_act(F, M, p))] for p in pts)


def elementary(F, n, i, j, a):
    M = [[F.one if r == c else F.zero for c in range(n)] for r in range(n)]
    M[i][j] = a
    return M


def write(name, deg, gens, order, prov):
    path = os.path.join(OUT, f"{name}.toml")
    with open(path, "w") as f:
        f.write(f'name = "{name}"\n')
        f.write(f"degree = {deg}\n")
        f.write("generators = [\n")
        for g in gens:
            f.write(f'    "{cycles(g)}",\n')
        f.write("]\n")
        f.write(f"expected_order = {order}\n")
        f.write(f'provenance = "{prov}"\n')
    print(name, deg, order)


def check(gens, deg, order):
    got = closure(gens, deg)
    assert got == order, (got, order)


def sl_action(F, n, order, seed):
    pts = proj_points(F, n)
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                for a in F.elts:
                    if a != F.zero:
                        gens.append(perm_from_matrix(F, elementary(F, n, i, j, a), pts))
    gens = list(set(gens))
    check(gens, len(pts), order)
    return two_generators(gens, len(pts), order, seed), len(pts)


def from_cycles(deg, cyc_list):
    p = list(range(deg))
    for c in cyc_list:
        for a, b in zip(c, c[1:] + c[:1]):
            p[a] = b
    return tuple(p)


def main():
    os.makedirs(OUT, exist_ok=True)

    # alternating groups, natural action
    g = [from_cycles(5, [[0, 1, 2, 3, 4]]), from_cycles(5, [[0, 1, 2]])]
    check(g, 5, 60)
    write("A5", 5, g, 60, "natural action on 5 points, generators (0,1,2,3,4) and (0,1,2)")
    g = [from_cycles(6, [[0, 1, 2, 3, 4]]), from_cycles(6, [[3, 4, 5]])]
    check(g, 6, 360)
    write("A6", 6, g, 360, "natural action on 6 points")

    # PSL(2,7) = GL(3,2) on the 7 points of the Fano plane
    F2 = GF(2, 1, (1, 1))
    g, d = sl_action(F2, 3, 168, 7)
    write("L2_7", d, g, 168, "GL(3,2) acting on the 7 nonzero vectors of GF(2)^3 (L2(7) = L3(2))")

    # PSL(2,8) on the projective line over GF(8), x^3 + x + 1
    F8 = GF(2, 3, (1, 1, 0, 1))
    g, d = sl_action(F8, 2, 504, 8)
    write("L2_8", d, g, 504, "SL(2,8) acting on the 9 points of the projective line over GF(8)")

    # PSL(2,17) on the projective line over GF(17)
    F17 = GF(17, 1, (0, 1))
    g, d = sl_action(F17, 2, 2448, 17)
    write("L2_17", d, g, 2448, "SL(2,17) acting on the 18 points of the projective line over GF(17)")

    # PSL(3,3) on the 13 points of the projective plane over GF(3)
    F3 = GF(3, 1, (0, 1))
    g, d = sl_action(F3, 3, 5616, 13)
    write("L3_3", d, g, 5616, "SL(3,3) acting on the 13 points of the projective plane over GF(3)")

    # U3(3): SU(3,3) on the 28 isotropic points of a hermitian form over GF(9)
    F9 = GF(3, 2, (2, 2, 1))  # x^2 + 2x + 2 = x^2 - x - 1, primitive
    frob = lambda a: F9.pow(a, 3)
    def herm(u, v):  # antidiagonal form u0 v2^3 + u1 v1^3 + u2 v0^3
        return F_sum(F9, [F9.mul(u[0], frob(v[2])), F9.mul(u[1], frob(v[1])), F9.mul(u[2], frob(v[0]))])
    pts = [p for p in proj_points(F9, 3) if herm(p, p) == F9.zero]
    assert len(pts) == 28
    # unitary unitriangular and lower-unitriangular matrices with det 1
    gens = []
    for a, b, c in itertools.product(F9.elts, repeat=3):
        for lower in (False, True):
            M = [[F9.one, F9.zero, F9.zero], [F9.zero, F9.one, F9.zero], [F9.zero, F9.zero, F9.one]]
            if lower:
                M[1][0], M[2][0], M[2][1] = a, b, c
            else:
                M[0][1], M[0][2], M[1][2] = a, b, c
            basis = [tuple(M[i]) for i in range(3)]
            ok = all(
                herm(mat_act(F9, M, e1), mat_act(F9, M, e2)) == herm(e1, e2)
                for e1 in [(F9.one, F9.zero, F9.zero), (F9.zero, F9.one, F9.zero), (F9.zero, F9.zero, F9.one)]
                for e2 in [(F9.one, F9.zero, F9.zero), (F9.zero, F9.one, F9.zero), (F9.zero, F9.zero, F9.one)]
            )
            if ok and (a, b, c) != (F9.zero,) * 3:
                gens.append(perm_from_matrix(F9, M, pts))
    gens = list(set(gens))
    check(gens, 28, 6048)
    g = two_generators(gens, 28, 6048, 33)
    write("U3_3", 28, g, 6048, "SU(3,3) acting on the 28 isotropic points of the hermitian form x0*y2^3 + x1*y1^3 + x2*y0^3 over GF(9); U3(3) = SU(3,3)")

    # U4(2): derived subgroup of W(E6) acting on the 27 weights in the orbit of a minuscule weight
    cartan = [
        [2, -1, 0, 0, 0, 0],
        [-1, 2, -1, 0, 0, 0],
        [0, -1, 2, -1, 0, -1],
        [0, 0, -1, 2, -1, 0],
        [0, 0, 0, -1, 2, 0],
        [0, 0, -1, 0, 0, 2],
    ]
    def refl(i, w):
        w = list(w)
        c = w[i]
        return tuple(w[j] - c * cartan[i][j] for j in range(6))
    start = (1, 0, 0, 0, 0, 0)
    orbit, frontier = {start}, [start]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(6):
                y = refl(i, w)
                if y not in orbit:
                    orbit.add(y)
                    nxt.append(y)
        frontier = nxt
    orbit = sorted(orbit)
    assert len(orbit) == 27
    idx = {w: k for k, w in enumerate(orbit)}
    s = [tuple(idx[refl(i, w)] for w in orbit) for i in range(6)]
    assert closure(s, 27) == 51840
    even = [tuple(s[j][s[i][p]] for p in range(27)) for i in range(6) for j in range(6) if i != j]
    check(even, 27, 25920)
    g = two_generators(even, 27, 25920, 42)
    write("U4_2", 27, g, 25920, "rotation subgroup of the Weyl group W(E6) acting on the 27 weights of a minuscule E6 representation; W(E6)' = U4(2)")

    # Sp(4,3) = 2.U4(2) on the 80 nonzero vectors of GF(3)^4 (symplectic transvections)
    vecs = [v for v in itertools.product(range(3), repeat=4) if any(v)]
    vidx = {v: i for i, v in enumerate(vecs)}
    def form(u, v):
        return (u[0] * v[2] + u[1] * v[3] - u[2] * v[0] - u[3] * v[1]) % 3
    tg = []
    for a in vecs:
        img = []
        for x in vecs:
            c = form(x, a)
            img.append(vidx[tuple((xi + c * ai) % 3 for xi, ai in zip(x, a))])
        tg.append(tuple(img))
    tg = list(set(tg))
    check(tg, 80, 51840)
    g = two_generators(tg, 80, 51840, 5)
    write("2U4_2", 80, g, 51840, "Sp(4,3) acting on the 80 nonzero vectors of GF(3)^4, generated by symplectic transvections; Sp(4,3) = 2.U4(2)")

    # small corpus
    write("trivial", 1, [], 1, "trivial group")
    write("C2", 2, [from_cycles(2, [[0, 1]])], 2, "regular action")
    write("C3", 3, [from_cycles(3, [[0, 1, 2]])], 3, "regular action")
    write("C6", 6, [from_cycles(6, [[0, 1, 2, 3, 4, 5]])], 6, "regular action")
    write("S3", 3, [from_cycles(3, [[0, 1, 2]]), from_cycles(3, [[0, 1]])], 6, "natural action")
    write("S4", 4, [from_cycles(4, [[0, 1, 2, 3]]), from_cycles(4, [[0, 1]])], 24, "natural action")
    write("A4", 4, [from_cycles(4, [[0, 1, 2]]), from_cycles(4, [[1, 2, 3]])], 12, "natural action")
    write("D8", 4, [from_cycles(4, [[0, 1, 2, 3]]), from_cycles(4, [[0, 2]])], 8, "symmetries of a square")
    q8 = [from_cycles(8, [[0, 1, 2, 3], [4, 5, 6, 7]]), from_cycles(8, [[0, 4, 2, 6], [1, 7, 3, 5]])]
    check(q8, 8, 8)
    write("Q8", 8, q8, 8, "regular action of the quaternion group")
    sl23 = []
    v3 = [v for v in itertools.product(range(3), repeat=2) if any(v)]
    vi = {v: i for i, v in enumerate(v3)}
    for M in [((1, 1), (0, 1)), ((1, 0), (1, 1))]:
        sl23.append(tuple(vi[((x[0] * M[0][0] + x[1] * M[1][0]) % 3, (x[0] * M[0][1] + x[1] * M[1][1]) % 3)] for x in v3))
    check(sl23, 8, 24)
    write("SL2_3", 8, sl23, 24, "SL(2,3) acting on the 8 nonzero vectors of GF(3)^2")


if __name__ == "__main__":
    main()
