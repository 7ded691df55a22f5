"""Finite 2-categories with a marked 1-subcategory, and free completions
of acyclic 2-computads.

A 2-category is stored as: objects, one hom FinCategory per ordered object
pair (its objects are the 1-cells, its arrows the 2-cells), the identity
1-cells, and explicit horizontal-composition tables on both levels.  All
1-cell and 2-cell identifiers must be globally unique so the tables can be
keyed by identifiers alone.

Free completions represent a 2-cell of the completion as a rewrite
sequence (cell generator applied at a path position), taken modulo the
interchange law by exhaustive closure under adjacent swaps; the
identifier uses the lexicographically least sequence of the class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .fincat import FinCategory, InputError, empty_category, is_isomorphism, validate_category

Path = tuple[str, ...]

_FORBIDDEN = set(".:@;|")


@dataclass
class Fin2Category:
    name: str
    objects: list[str]
    hom: dict[tuple[str, str], FinCategory]
    identity_1cell: dict[str, str]
    hcompose1: dict[tuple[str, str], str]
    hcompose2: dict[tuple[str, str], str]

    def __post_init__(self):
        self.objects = sorted(self.objects)
        self._pair_of_1cell: dict[str, tuple[str, str]] = {}
        self._pair_of_2cell: dict[str, tuple[str, str]] = {}
        for pair, H in self.hom.items():
            for f in H.objects:
                self._pair_of_1cell[f] = pair
            for a in H.arrows:
                self._pair_of_2cell[a] = pair

    # -- lookups ---------------------------------------------------------

    def hom_of(self, A: str, B: str) -> FinCategory:
        if A not in self.objects or B not in self.objects:
            raise InputError(f"{self.name}: unknown object in pair ({A}, {B})")
        return self.hom.get((A, B)) or empty_category(f"{self.name}({A},{B})")

    def one_cells(self) -> list[str]:
        return sorted(self._pair_of_1cell)

    def one_cells_between(self, A: str, B: str) -> list[str]:
        return self.hom_of(A, B).objects

    def two_cells_between(self, f: str, g: str) -> list[str]:
        H = self.hom[self._home_of_1cell(f)]
        return H.hom(f, g)

    def _home_of_1cell(self, f: str) -> tuple[str, str]:
        try:
            return self._pair_of_1cell[f]
        except KeyError:
            raise InputError(f"{self.name}: unknown 1-cell {f!r}") from None

    def _home_of_2cell(self, a: str) -> tuple[str, str]:
        try:
            return self._pair_of_2cell[a]
        except KeyError:
            raise InputError(f"{self.name}: unknown 2-cell {a!r}") from None

    def src1(self, f: str) -> str:
        return self._home_of_1cell(f)[0]

    def tgt1(self, f: str) -> str:
        return self._home_of_1cell(f)[1]

    def src2(self, a: str) -> str:
        return self.hom[self._home_of_2cell(a)].source(a)

    def tgt2(self, a: str) -> str:
        return self.hom[self._home_of_2cell(a)].target(a)

    # -- operations --------------------------------------------------------

    def id1(self, A: str) -> str:
        try:
            return self.identity_1cell[A]
        except KeyError:
            raise InputError(f"{self.name}: unknown object {A!r}") from None

    def id2(self, f: str) -> str:
        return self.hom[self._home_of_1cell(f)].id_of(f)

    def compose1(self, g: str, f: str) -> str:
        """g after f, for 1-cells."""
        try:
            return self.hcompose1[(g, f)]
        except KeyError:
            raise InputError(f"{self.name}: 1-cells ({g!r}, {f!r}) not composable") from None

    def vcompose(self, b: str, a: str) -> str:
        """Vertical composite b after a, inside one hom-category."""
        return self.hom[self._home_of_2cell(a)].compose(b, a)

    def hcompose(self, b: str, a: str) -> str:
        """Horizontal composite, a in the earlier hom, b in the later one."""
        try:
            return self.hcompose2[(b, a)]
        except KeyError:
            raise InputError(f"{self.name}: 2-cells ({b!r}, {a!r}) not composable") from None

    def post_whisker(self, h: str, a: str) -> str:
        """The 1-cell h applied after the 2-cell a."""
        return self.hcompose(self.id2(h), a)

    def pre_whisker(self, a: str, h: str) -> str:
        """The 2-cell a applied after the 1-cell h."""
        return self.hcompose(a, self.id2(h))

    def invert2(self, a: str) -> Optional[str]:
        return is_isomorphism(self.hom[self._home_of_2cell(a)], a)

    def equal2(self, a: str, b: str) -> bool:
        return a == b

    def generating_1cells(self) -> list[str]:
        """Non-identity 1-cells with no factorization into non-identities."""
        ids = set(self.identity_1cell.values())
        composite = {
            c
            for (g, f), c in self.hcompose1.items()
            if g not in ids and f not in ids
        }
        return sorted(f for f in self._pair_of_1cell if f not in ids and f not in composite)


def validate_2category(A: Fin2Category) -> list[str]:
    out = []
    objset = set(A.objects)
    seen: dict[str, str] = {}
    for pair in A.hom:
        if pair[0] not in objset or pair[1] not in objset:
            out.append(f"hom{pair}: unknown endpoint object")
    for pair, H in sorted(A.hom.items()):
        for v in validate_category(H):
            out.append(f"hom{pair}: {v}")
        for c in itertools.chain(H.objects, H.arrows):
            if c in seen and seen[c] != f"{pair}":
                out.append(f"identifier {c} reused across {seen[c]} and {pair}")
            seen[c] = f"{pair}"
    for X in A.objects:
        i = A.identity_1cell.get(X)
        if i is None or i not in A.hom_of(X, X).objects:
            out.append(f"object {X}: missing identity 1-cell")
    if out:
        return out

    cells1 = A.one_cells()
    comp1 = A.hcompose1
    for (g, f), c in sorted(comp1.items()):
        if f not in A._pair_of_1cell or g not in A._pair_of_1cell:
            out.append(f"1-composite entry ({g}, {f}) uses unknown 1-cells")
        elif A.tgt1(f) != A.src1(g):
            out.append(f"1-composite entry ({g}, {f}) is not composable")
        elif c not in A._pair_of_1cell or A._pair_of_1cell[c] != (A.src1(f), A.tgt1(g)):
            out.append(f"1-composite of ({g}, {f}) has wrong endpoints: {c}")
    for g in cells1:
        for f in cells1:
            if A.tgt1(f) == A.src1(g) and (g, f) not in comp1:
                out.append(f"missing 1-composite for ({g}, {f})")
    if out:
        return out
    for f in cells1:
        a, b = A._pair_of_1cell[f]
        if comp1[(f, A.identity_1cell[a])] != f or comp1[(A.identity_1cell[b], f)] != f:
            out.append(f"1-cell unit fails at {f}")
    for h in cells1:
        for g in cells1:
            if A.tgt1(g) != A.src1(h):
                continue
            for f in cells1:
                if A.tgt1(f) != A.src1(g):
                    continue
                if comp1[(h, comp1[(g, f)])] != comp1[(comp1[(h, g)], f)]:
                    out.append(f"1-cell associativity fails at ({h}, {g}, {f})")

    # horizontal composition of 2-cells: totality, endpoints, functoriality
    comp2 = A.hcompose2
    all2 = sorted(A._pair_of_2cell)
    for b in all2:
        (bs, bt) = A._pair_of_2cell[b]
        for a in all2:
            (as_, at) = A._pair_of_2cell[a]
            if at != bs:
                continue
            c = comp2.get((b, a))
            if c is None:
                out.append(f"missing 2-composite for ({b}, {a})")
                continue
            if A._pair_of_2cell.get(c) != (as_, bt):
                out.append(f"2-composite of ({b}, {a}) lands in the wrong hom")
                continue
            if A.src2(c) != comp1[(A.src2(b), A.src2(a))] or A.tgt2(c) != comp1[
                (A.tgt2(b), A.tgt2(a))
            ]:
                out.append(f"2-composite of ({b}, {a}) has wrong endpoints")
    for (b, a), c in sorted(comp2.items()):
        if b not in A._pair_of_2cell or a not in A._pair_of_2cell:
            out.append(f"2-composite entry ({b}, {a}) uses unknown 2-cells")
        elif A._pair_of_2cell[a][1] != A._pair_of_2cell[b][0]:
            out.append(f"2-composite entry ({b}, {a}) is not composable")
    if out:
        return out

    for g in cells1:
        for f in cells1:
            if A.tgt1(f) == A.src1(g):
                if comp2[(A.id2(g), A.id2(f))] != A.id2(comp1[(g, f)]):
                    out.append(f"horizontal composite of identities fails at ({g}, {f})")
    # interchange: vertically composable pairs in consecutive homs
    pairs_by_hom: dict[tuple[str, str], list[tuple[str, str]]] = {}
    for pair, H in A.hom.items():
        pairs_by_hom[pair] = list(H.composable_pairs())
    for (Ao, Bo), left in pairs_by_hom.items():
        for (Bo2, Co), right in pairs_by_hom.items():
            if Bo2 != Bo:
                continue
            for bp, b in right:
                for ap, a in left:
                    lhs = comp2[(A.vcompose(bp, b), A.vcompose(ap, a))]
                    rhs = A.vcompose(comp2[(bp, ap)], comp2[(b, a)])
                    if lhs != rhs:
                        out.append(
                            f"interchange fails at (({bp}, {b}), ({ap}, {a}))"
                        )
    # horizontal unit and associativity on 2-cells
    for a in all2:
        (as_, at) = A._pair_of_2cell[a]
        if comp2[(a, A.id2(A.identity_1cell[as_]))] != a:
            out.append(f"horizontal right unit fails at {a}")
        if comp2[(A.id2(A.identity_1cell[at]), a)] != a:
            out.append(f"horizontal left unit fails at {a}")
    for c in all2:
        for b in all2:
            if A._pair_of_2cell[b][1] != A._pair_of_2cell[c][0]:
                continue
            for a in all2:
                if A._pair_of_2cell[a][1] != A._pair_of_2cell[b][0]:
                    continue
                if comp2[(comp2[(c, b)], a)] != comp2[(c, comp2[(b, a)])]:
                    out.append(f"horizontal associativity fails at ({c}, {b}, {a})")
    return out


@dataclass
class SigmaClass:
    """A marked family of 1-cells: must contain identities, closed under
    composition (a 1-subcategory containing all the objects)."""

    owner: Fin2Category
    members: set[str]

    def __contains__(self, f: str) -> bool:
        return f in self.members


def sigma_all(A: Fin2Category) -> SigmaClass:
    return SigmaClass(A, set(A.one_cells()))


def sigma_identities(A: Fin2Category) -> SigmaClass:
    return SigmaClass(A, set(A.identity_1cell.values()))


def validate_sigma(S: SigmaClass) -> list[str]:
    A = S.owner
    out = []
    for f in sorted(S.members):
        if f not in A._pair_of_1cell:
            out.append(f"marked 1-cell {f} does not exist")
    for X in A.objects:
        if A.identity_1cell[X] not in S.members:
            out.append(f"missing identity 1-cell of {X}")
    for u in sorted(S.members & set(A._pair_of_1cell)):
        for v in sorted(S.members & set(A._pair_of_1cell)):
            if A.tgt1(u) == A.src1(v):
                if A.compose1(v, u) not in S.members:
                    out.append(f"composite of marked pair ({v}, {u}) escapes the class")
    return out


# ---------------------------------------------------------------------------
# 2-computads and free completion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ArrowGen:
    name: str
    source: str
    target: str
    in_sigma: bool = False


@dataclass(frozen=True)
class CellGen:
    name: str
    source: Path
    target: Path


@dataclass
class TwoComputad:
    name: str
    objects: list[str]
    arrows: list[ArrowGen]
    cells: list[CellGen]


def validate_computad(K: TwoComputad) -> list[str]:
    out = []
    names = list(K.objects) + [a.name for a in K.arrows] + [c.name for c in K.cells]
    for n in names:
        if not n or _FORBIDDEN & set(n):
            out.append(f"name {n!r} is empty or contains a reserved character")
    dupes = {n for n in names if names.count(n) > 1}
    for n in sorted(dupes):
        out.append(f"duplicate generator name {n}")
    objset = set(K.objects)
    by_name = {a.name: a for a in K.arrows}
    for a in K.arrows:
        if a.source not in objset or a.target not in objset:
            out.append(f"arrow {a.name}: unknown endpoint")
        if a.source == a.target:
            out.append(f"arrow {a.name}: loop at {a.source}")
    cycle = _find_cycle(K)
    if cycle:
        out.append("arrow generators contain the cycle " + " -> ".join(cycle))

    def endpoints(path: Path) -> Optional[tuple[str, str]]:
        if not all(e in by_name for e in path):
            return None
        for e1, e2 in zip(path, path[1:]):
            if by_name[e1].target != by_name[e2].source:
                return None
        if not path:
            return None  # a cell source must be a nonempty path here
        return by_name[path[0]].source, by_name[path[-1]].target

    for c in K.cells:
        se, te = endpoints(c.source), endpoints(c.target)
        if se is None or te is None:
            out.append(f"cell {c.name}: source/target is not a composable nonempty path")
        elif se != te:
            out.append(f"cell {c.name}: source and target paths are not parallel")
        elif c.source == c.target:
            out.append(f"cell {c.name}: source and target paths coincide (2-loop)")
    return out


def _find_cycle(K: TwoComputad) -> Optional[list[str]]:
    succ: dict[str, list[str]] = {o: [] for o in K.objects}
    for a in K.arrows:
        if a.source in succ and a.target in succ:
            succ[a.source].append(a.target)
    state: dict[str, int] = {}
    stack: list[str] = []

    def dfs(v: str) -> Optional[list[str]]:
        state[v] = 1
        stack.append(v)
        for w in succ[v]:
            if state.get(w) == 1:
                return stack[stack.index(w):] + [w]
            if state.get(w, 0) == 0:
                got = dfs(w)
                if got:
                    return got
        stack.pop()
        state[v] = 2
        return None

    for o in K.objects:
        if state.get(o, 0) == 0:
            got = dfs(o)
            if got:
                return got
    return None


Move = tuple[int, str]  # (position in the path, cell generator name)
Seq = tuple[Move, ...]


def path_id(source: str, path: Path) -> str:
    return f"1@{source}" if not path else ".".join(path)


def _seq_id(path: Path, source: str, seq: Seq) -> str:
    body = "id" if not seq else ";".join(f"{c}@{i}" for i, c in seq)
    return f"{path_id(source, path)}:{body}"


@dataclass
class FreeTwoCategory:
    """A free completion: the 2-category plus decoding data for its cells."""

    category: Fin2Category
    sigma: SigmaClass
    computad: TwoComputad
    arrow_embedding: dict[str, str]
    cell_embedding: dict[str, str]
    path_decode: dict[str, tuple[str, Path]]
    cell_decode: dict[str, tuple[str, Path, Seq]]  # id -> (source object, path, seq)


def free_2category(K: TwoComputad) -> FreeTwoCategory:
    """Close an acyclic computad under all composites.

    1-cells are the composable generator paths (empty path = identity);
    2-cells are rewrite sequences modulo interchange, named by the least
    sequence of each class.  Marked flags propagate: a path is marked iff
    every generator in it is.
    """
    violations = validate_computad(K)
    if violations:
        raise InputError(f"invalid computad {K.name}: " + "; ".join(violations))
    by_name = {a.name: a for a in K.arrows}
    cells = {c.name: c for c in K.cells}

    # all composable paths, grouped by endpoints
    paths: dict[tuple[str, str], list[Path]] = {
        (a, b): [] for a in K.objects for b in K.objects
    }
    for o in K.objects:
        paths[(o, o)].append(())
    frontier: list[tuple[str, str, Path]] = [(o, o, ()) for o in K.objects]
    while frontier:
        s, t, p = frontier.pop()
        for a in K.arrows:
            if a.source == t:
                q = p + (a.name,)
                paths[(s, a.target)].append(q)
                frontier.append((s, a.target, q))

    def apply_move(p: Path, move: Move) -> Path:
        i, cname = move
        c = cells[cname]
        return p[:i] + c.target + p[i + len(c.source):]

    def moves_from(p: Path) -> list[Move]:
        out = []
        for cname in sorted(cells):
            src = cells[cname].source
            for i in range(len(p) - len(src) + 1):
                if p[i : i + len(src)] == src:
                    out.append((i, cname))
        return out

    # every rewrite sequence between paths of one hom; cycle check first
    for (s, t), ps in paths.items():
        state: dict[Path, int] = {}

        def dfs(p: Path, trail: list[Path]) -> None:
            state[p] = 1
            trail.append(p)
            for m in moves_from(p):
                q = apply_move(p, m)
                if state.get(q) == 1:
                    cyc = trail[trail.index(q):] + [q]
                    names = [path_id(s, r) for r in cyc]
                    raise InputError(
                        f"computad {K.name}: rewrite cycle " + " => ".join(names)
                    )
                if state.get(q, 0) == 0:
                    dfs(q, trail)
            trail.pop()
            state[p] = 2

        for p in ps:
            if state.get(p, 0) == 0:
                dfs(p, [])

    seqs_from: dict[Path, list[Seq]] = {}

    def collect(p: Path) -> list[Seq]:
        if p in seqs_from:
            return seqs_from[p]
        out: list[Seq] = [()]
        for m in moves_from(p):
            for rest in collect(apply_move(p, m)):
                out.append((m,) + rest)
        seqs_from[p] = out
        return out

    def swaps(seq: Seq) -> list[Seq]:
        """Adjacent interchange swaps applicable to the sequence."""
        out = []
        for k in range(len(seq) - 1):
            (i1, c1), (i2, c2) = seq[k], seq[k + 1]
            s1, t1 = len(cells[c1].source), len(cells[c1].target)
            s2, t2 = len(cells[c2].source), len(cells[c2].target)
            if i2 >= i1 + t1:  # second move acts right of the first rewrite
                swapped = ((i2 - t1 + s1, c2), (i1, c1))
            elif i2 + s2 <= i1:  # second move acts left of it
                swapped = ((i2, c2), (i1 + t2 - s2, c1))
            else:
                continue
            out.append(seq[:k] + swapped + seq[k + 2:])
        return out

    canon: dict[tuple[Path, Seq], Seq] = {}
    for (s, t), ps in paths.items():
        for p in ps:
            for seq in collect(p):
                if (p, seq) in canon:
                    continue
                cls = {seq}
                todo = [seq]
                while todo:
                    cur = todo.pop()
                    for nxt in swaps(cur):
                        if nxt not in cls:
                            cls.add(nxt)
                            todo.append(nxt)
                least = min(cls)
                for member in cls:
                    canon[(p, member)] = least

    # assemble the hom categories
    homs: dict[tuple[str, str], FinCategory] = {}
    path_decode: dict[str, tuple[str, Path]] = {}
    cell_decode: dict[str, tuple[str, Path, Seq]] = {}
    pid: dict[tuple[str, Path], str] = {}
    for (s, t), ps in paths.items():
        for p in ps:
            pid[(s, p)] = path_id(s, p)
            path_decode[path_id(s, p)] = (s, p)
    for (s, t), ps in sorted(paths.items()):
        objects = [pid[(s, p)] for p in ps]
        arrows: dict[str, tuple[str, str]] = {}
        identity: dict[str, str] = {}
        arrow_data: dict[str, tuple[Path, Seq]] = {}
        for p in ps:
            classes = sorted({canon[(p, seq)] for seq in seqs_from[p]})
            for seq in classes:
                q = p
                for m in seq:
                    q = apply_move(q, m)
                aid = _seq_id(p, s, seq)
                arrows[aid] = (pid[(s, p)], pid[(s, q)])
                arrow_data[aid] = (p, seq)
                cell_decode[aid] = (s, p, seq)
            identity[pid[(s, p)]] = _seq_id(p, s, ())
        composition = {}
        for b, (bp, bseq) in arrow_data.items():
            for a, (ap, aseq) in arrow_data.items():
                if arrows[a][1] != arrows[b][0]:
                    continue
                composition[(b, a)] = _seq_id(ap, s, canon[(ap, aseq + bseq)])
        homs[(s, t)] = FinCategory(
            name=f"{K.name}({s},{t})",
            objects=objects,
            arrows=arrows,
            identity=identity,
            composition=composition,
        )

    hcompose1 = {}
    for (s, m1), ps in paths.items():
        for (m2, t), qs in paths.items():
            if m2 != m1:
                continue
            for p in ps:
                for q in qs:
                    hcompose1[(pid[(m1, q)], pid[(s, p)])] = pid[(s, p + q)]
    hcompose2 = {}
    for (s, m), H1 in homs.items():
        for (m2, t), H2 in homs.items():
            if m2 != m:
                continue
            for b in H2.arrows:
                (_, bp, bseq) = cell_decode[b]
                bq = bp
                for mv in bseq:
                    bq = apply_move(bq, mv)
                for a in H1.arrows:
                    (_, ap, aseq) = cell_decode[a]
                    aq = ap
                    for mv in aseq:
                        aq = apply_move(aq, mv)
                    seq = aseq + tuple((i + len(aq), c) for i, c in bseq)
                    hcompose2[(b, a)] = _seq_id(ap + bp, s, canon[(ap + bp, seq)])

    category = Fin2Category(
        name=K.name,
        objects=list(K.objects),
        hom=homs,
        identity_1cell={o: pid[(o, ())] for o in K.objects},
        hcompose1=hcompose1,
        hcompose2=hcompose2,
    )
    marked = {
        pid[(s, p)]
        for (s, t), ps in paths.items()
        for p in ps
        if all(by_name[e].in_sigma for e in p)
    }
    sigma = SigmaClass(category, marked)
    arrow_embedding = {a.name: pid[(a.source, (a.name,))] for a in K.arrows}
    cell_embedding = {
        c.name: _seq_id(c.source, by_name[c.source[0]].source, ((0, c.name),))
        for c in K.cells
    }
    return FreeTwoCategory(
        category=category,
        sigma=sigma,
        computad=K,
        arrow_embedding=arrow_embedding,
        cell_embedding=cell_embedding,
        path_decode=path_decode,
        cell_decode=cell_decode,
    )


def hom_category(A: Fin2Category, X: str, Y: str) -> FinCategory:
    """The category of 1-cells X -> Y and the 2-cells between them."""
    return A.hom_of(X, Y)


# ---------------------------------------------------------------------------
# 2-functors
# ---------------------------------------------------------------------------


@dataclass
class TwoFunctor:
    domain: Fin2Category
    codomain: Fin2Category
    on_objects: dict[str, str]
    on_1cells: dict[str, str]
    on_2cells: dict[str, str]

    def obj(self, X: str) -> str:
        return self.on_objects[X]

    def one(self, f: str) -> str:
        return self.on_1cells[f]

    def two(self, a: str) -> str:
        return self.on_2cells[a]


def validate_2functor(G: TwoFunctor) -> list[str]:
    out = []
    D, A = G.domain, G.codomain
    for X in D.objects:
        if G.on_objects.get(X) not in A.objects:
            out.append(f"object {X}: image missing or unknown")
    for f in D.one_cells():
        g = G.on_1cells.get(f)
        if g is None or g not in A._pair_of_1cell:
            out.append(f"1-cell {f}: image missing or unknown")
        elif A._pair_of_1cell[g] != (
            G.on_objects.get(D.src1(f)),
            G.on_objects.get(D.tgt1(f)),
        ):
            out.append(f"1-cell {f}: image {g} has wrong endpoints")
    for a in sorted(D._pair_of_2cell):
        b = G.on_2cells.get(a)
        if b is None or b not in A._pair_of_2cell:
            out.append(f"2-cell {a}: image missing or unknown")
        elif A.src2(b) != G.on_1cells.get(D.src2(a)) or A.tgt2(b) != G.on_1cells.get(
            D.tgt2(a)
        ):
            out.append(f"2-cell {a}: image {b} has wrong endpoints")
    if out:
        return out
    for X in D.objects:
        if G.on_1cells[D.id1(X)] != A.id1(G.on_objects[X]):
            out.append(f"identity 1-cell of {X} not preserved")
    for f in D.one_cells():
        if G.on_2cells[D.id2(f)] != A.id2(G.on_1cells[f]):
            out.append(f"identity 2-cell of {f} not preserved")
    for (g, f), c in D.hcompose1.items():
        if A.compose1(G.on_1cells[g], G.on_1cells[f]) != G.on_1cells[c]:
            out.append(f"1-composition not preserved on ({g}, {f})")
    for (b, a), c in D.hcompose2.items():
        if A.hcompose(G.on_2cells[b], G.on_2cells[a]) != G.on_2cells[c]:
            out.append(f"horizontal composition not preserved on ({b}, {a})")
    for pair, H in D.hom.items():
        for (b, a), c in H.composition.items():
            if A.vcompose(G.on_2cells[b], G.on_2cells[a]) != G.on_2cells[c]:
                out.append(f"vertical composition not preserved on ({b}, {a})")
    return out


def identity_2functor(A: Fin2Category) -> TwoFunctor:
    return TwoFunctor(
        A,
        A,
        {X: X for X in A.objects},
        {f: f for f in A.one_cells()},
        {a: a for a in A._pair_of_2cell},
    )


def extend_generator_assignment(
    free: FreeTwoCategory,
    ops,
    on_objects: dict,
    on_arrows: dict,
    on_cells: dict,
) -> tuple[dict, dict]:
    """Extend a generator assignment over the whole free completion.

    ``ops`` supplies the target operations (id1, compose1, id2, vcompose,
    hcompose); it can be a Fin2Category or any object with that interface.
    Paths map to composites of the arrow images; a rewrite sequence maps to
    the vertical composite of its moves, each move being the cell image
    whiskered by the images of the untouched path segments.  Interchange in
    the target makes this independent of the representative sequence.
    """
    K = free.computad
    cells = {c.name: c for c in K.cells}
    by_name = {a.name: a for a in K.arrows}

    def img_path(source_obj: str, p: Path):
        cur = ops.id1(on_objects[source_obj])
        for e in p:
            cur = ops.compose1(on_arrows[e], cur)
        return cur

    on_1cells = {}
    for pid_, (s, p) in free.path_decode.items():
        on_1cells[pid_] = img_path(s, p)

    on_2cells = {}
    for cid, (s, p, seq) in free.cell_decode.items():
        cur = p
        total = ops.id2(img_path(s, p))
        for i, cname in seq:
            c = cells[cname]
            left, right = cur[:i], cur[i + len(c.source):]
            step = ops.hcompose(on_cells[cname], ops.id2(img_path(s, left)))
            right_src = by_name[c.source[-1]].target
            step = ops.hcompose(ops.id2(img_path(right_src, right)), step)
            total = ops.vcompose(step, total)
            cur = left + c.target + right
        on_2cells[cid] = total
    return on_1cells, on_2cells


def two_functor_from_generators(
    free: FreeTwoCategory,
    target: Fin2Category,
    on_objects: dict[str, str],
    on_arrows: dict[str, str],
    on_cells: dict[str, str],
) -> TwoFunctor:
    """Extend a generator assignment to a 2-functor on the free completion."""
    on_1cells, on_2cells = extend_generator_assignment(
        free, target, on_objects, on_arrows, on_cells
    )
    return TwoFunctor(free.category, target, dict(on_objects), on_1cells, on_2cells)
