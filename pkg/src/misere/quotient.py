"""Bounded indistinguishability quotients of closures and their posets.

Elements of a closure are disjunctive sums over its base, encoded as count
vectors over the nonzero base positions ("atoms"). Two elements are
identified when their misère outcomes agree in every context up to a size
bound. The result is an empirical certificate at that bound, not a proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Callable, Optional, Sequence

from .outcomes import Outcome, SumPosition, make_sum, misere_outcome, outcome_geq
from .positions import (
    RHO,
    RHO_BAR,
    STORE,
    ZERO,
    conjugate,
    format_position,
    structural_key,
)

FINITE = "FINITE_VERIFIED_AT_BOUND"
NOT_STABILIZED = "NOT_STABILIZED"

CERTIFICATE_NOTE = (
    "Classes are separated by contexts up to the context bound; equality of "
    "classes is only certified up to that bound."
)

Vector = tuple


class PreconditionError(ValueError):
    pass


class UnsupportedInputError(ValueError):
    pass


@dataclass(frozen=True)
class ClosureBase:
    generators: tuple
    base: tuple  # option-closed, contains 0, sorted by structural key

    @property
    def atoms(self) -> tuple:
        return tuple(p for p in self.base if p != ZERO)

    def contains_sum(self, s: SumPosition) -> bool:
        members = set(self.base)
        return all(c in members for c in s)


def option_closure(generators: Sequence[int]) -> ClosureBase:
    """Least option-closed set containing 0 and the generators."""
    seen = {ZERO}
    stack = list(generators)
    while stack:
        p = stack.pop()
        if p in seen:
            continue
        seen.add(p)
        stack.extend(STORE.left(p) + STORE.right(p))
    return ClosureBase(tuple(generators), tuple(sorted(seen, key=structural_key)))


def enumerate_multisets(count: int, bound: int):
    """Count vectors over `count` atoms, by total size then lexicographically."""
    for size in range(bound + 1):
        for combo in combinations_with_replacement(range(count), size):
            vec = [0] * count
            for i in combo:
                vec[i] += 1
            yield tuple(vec)


def _vector_to_sum(atoms: Sequence[int], vec: Vector) -> SumPosition:
    return make_sum(a for a, k in zip(atoms, vec) for _ in range(k))


def _sum_to_vector(atoms: Sequence[int], s: SumPosition) -> Vector:
    index = {a: i for i, a in enumerate(atoms)}
    vec = [0] * len(atoms)
    for c in s:
        if c not in index:
            raise PreconditionError(f"{format_position(c)} is not in the closure base")
        vec[index[c]] += 1
    return tuple(vec)


def _add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def distinguish(a: SumPosition, b: SumPosition, base: ClosureBase,
                context_bound: int) -> Optional[SumPosition]:
    """First context (by size, then lexicographic) separating a and b, if any."""
    a, b = make_sum(a), make_sum(b)
    atoms = base.atoms
    _sum_to_vector(atoms, a)
    _sum_to_vector(atoms, b)
    for vec in enumerate_multisets(len(atoms), context_bound):
        ctx = _vector_to_sum(atoms, vec)
        if misere_outcome(a + ctx) != misere_outcome(b + ctx):
            return ctx
    return None


@dataclass(frozen=True)
class RelationCheck:
    holds: bool
    context: Optional[SumPosition] = None
    context_bound: int = 0

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "context": None if self.context is None else format_sum(self.context),
            "context_bound": self.context_bound,
        }


def verify_relation(lhs: SumPosition, rhs: SumPosition, base: ClosureBase,
                    context_bound: int) -> RelationCheck:
    """Check lhs == rhs modulo the closure, up to the context bound."""
    ctx = distinguish(lhs, rhs, base, context_bound)
    return RelationCheck(ctx is None, ctx, context_bound)


def format_sum(s: SumPosition) -> str:
    if not s:
        return "0"
    parts = []
    i = 0
    while i < len(s):
        j = i
        while j < len(s) and s[j] == s[i]:
            j += 1
        text = format_position(s[i])
        parts.append(text if j - i == 1 else f"{j - i}*{text}")
        i = j
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# Symbols and words


def symbol_names(atoms: Sequence[int]) -> list[str]:
    """Letters for atoms in base order; a few positions get fixed letters."""
    from .positions import left_move_to, tau_power

    special = {RHO: "p", RHO_BAR: "q"}
    for n in range(1, 12):
        special.setdefault(left_move_to(tau_power(n)), "t")
    names = []
    used = set()
    for a in atoms:
        name = special.get(a)
        if name is not None and name not in used:
            names.append(name)
            used.add(name)
            continue
        names.append(None)
    pool = (c for c in "abcdefghijklmnoprsuvwxyz" if c not in set(special.values()))
    result = []
    for name in names:
        if name is None:
            name = next(c for c in pool if c not in used)
            used.add(name)
        result.append(name)
    return result


def format_word(vec: Vector, symbols: Sequence[str]) -> str:
    parts = []
    for k, sym in zip(vec, symbols):
        if k == 1:
            parts.append(sym)
        elif k > 1:
            parts.append(f"{sym}^{k}")
    return "".join(parts) or "1"


def word_order_key(vec: Vector) -> tuple:
    """Elimination order: words over earlier letters come first.

    Within the same highest letter, shorter words come first, then the
    lexicographically least letter sequence.
    """
    highest = max((i for i, k in enumerate(vec) if k), default=-1)
    letters = tuple(i for i, k in enumerate(vec) for _ in range(k))
    return (highest, sum(vec), letters)


# ---------------------------------------------------------------------------
# Reports


@dataclass
class QuotientClass:
    representative: Vector
    word: str
    outcome: Outcome
    members: list = field(default_factory=list)


@dataclass
class QuotientReport:
    generators: list
    atoms: list
    symbols: list
    classes: list
    relations: list
    status: str
    sum_bound: int
    context_bound: int
    witnesses: list
    congruence_ok: bool
    layer_class_counts: list
    labels: list = field(default_factory=list)
    # Internal data kept for poset computation.
    contexts: list = field(default_factory=list, repr=False)
    profiles: list = field(default_factory=list, repr=False)
    class_of_vector: dict = field(default_factory=dict, repr=False)
    outcome_fn: Optional[Callable] = field(default=None, repr=False)
    profiler: Optional["_Profiler"] = field(default=None, repr=False)

    @property
    def words(self) -> list[str]:
        return [c.word for c in self.classes]

    @property
    def tetrapartition(self) -> dict:
        parts = {o.value: [] for o in Outcome}
        for c in self.classes:
            parts[c.outcome.value].append(c.word)
        return parts

    def class_index(self, vec: Vector) -> int:
        """Class of a count vector, computing its profile if needed."""
        found = self.class_of_vector.get(vec)
        if found is not None:
            return found
        prof = self.profiler.profile(vec)
        for i, p in enumerate(self.profiles):
            if p == prof:
                return i
        raise KeyError("element is not equivalent to any recorded class at this bound")

    def word_class(self, word: dict) -> int:
        """Class of a word given as {symbol: exponent}."""
        vec = [0] * len(self.symbols)
        for sym, k in word.items():
            vec[self.symbols.index(sym)] += k
        return self.class_index(tuple(vec))

    def describe_vector(self, vec: Vector) -> str:
        return format_word(vec, self.symbols)

    def to_dict(self) -> dict:
        return {
            "generators": self.generators,
            "base": self.labels,
            "symbols": dict(zip(self.symbols, self.labels)),
            "classes": [
                {
                    "word": c.word,
                    "representative": self.describe_vector(c.representative),
                    "outcome": c.outcome.value,
                    "members_at_bound": len(c.members),
                }
                for c in self.classes
            ],
            "relations": [list(r) for r in self.relations],
            "tetrapartition": self.tetrapartition,
            "status": self.status,
            "sum_bound": self.sum_bound,
            "context_bound": self.context_bound,
            "layer_class_counts": self.layer_class_counts,
            "congruence_ok": self.congruence_ok,
            "witnesses": self.witnesses,
            "note": CERTIFICATE_NOTE,
        }


class _Profiler:
    """Outcome profiles over a fixed context list, with vectors packed as integers.

    A count vector is packed in base `radix`; adding packed vectors is plain
    integer addition as long as no coordinate reaches the radix.
    """

    def __init__(self, outcome_fn, atom_count, contexts, radix):
        self.outcome_fn = outcome_fn
        self.radix = radix
        self.weights = [radix ** i for i in range(atom_count)]
        self.context_codes = [self.encode(c) for c in contexts]
        self.contexts = contexts
        self.context_size = max((sum(c) for c in contexts), default=0)
        self.cache: dict[int, Outcome] = {}

    def encode(self, vec: Vector) -> int:
        return sum(k * w for k, w in zip(vec, self.weights))

    def decode(self, code: int) -> Vector:
        out = []
        for _ in self.weights:
            code, k = divmod(code, self.radix)
            out.append(k)
        return tuple(out)

    def outcome(self, vec: Vector) -> Outcome:
        if sum(vec) >= self.radix:
            return self.outcome_fn(vec)
        return self._by_code(self.encode(vec))

    def _by_code(self, code: int) -> Outcome:
        found = self.cache.get(code)
        if found is None:
            found = self.cache[code] = self.outcome_fn(self.decode(code))
        return found

    def profile(self, vec: Vector) -> tuple:
        if sum(vec) + self.context_size >= self.radix:
            return tuple(self.outcome_fn(_add(vec, c)) for c in self.contexts)
        base = self.encode(vec)
        cache = self.cache
        out = []
        for c in self.context_codes:
            code = base + c
            found = cache.get(code)
            if found is None:
                found = self._by_code(code)
            out.append(found)
        return tuple(out)


def quotient_from_oracle(outcome_fn: Callable[[Vector], Outcome], atom_count: int,
                         symbols: Sequence[str], labels: Sequence[str],
                         sum_bound: int, context_bound: int,
                         generators: Sequence[str] = (),
                         max_witnesses: int = 400) -> QuotientReport:
    """Quotient of count vectors over atoms under an arbitrary outcome oracle."""
    if sum_bound < 1 or context_bound < 0:
        raise ValueError("sum_bound must be >= 1 and context_bound >= 0")
    contexts = list(enumerate_multisets(atom_count, context_bound))
    profiler = _Profiler(outcome_fn, atom_count, contexts, sum_bound + context_bound + 2)
    outcome = profiler.outcome
    elements = sorted(enumerate_multisets(atom_count, sum_bound), key=word_order_key)

    profile_index: dict[tuple, int] = {}
    profiles: list[tuple] = []
    class_members: list[list] = []
    class_of: dict[Vector, int] = {}
    for vec in elements:
        prof = profiler.profile(vec)
        idx = profile_index.get(prof)
        if idx is None:
            idx = profile_index[prof] = len(profiles)
            profiles.append(prof)
            class_members.append([])
        class_members[idx].append(vec)
        class_of[vec] = idx

    classes = [
        QuotientClass(members[0], format_word(members[0], symbols), prof[0], members)
        for members, prof in zip(class_members, profiles)
    ]

    # Class counts restricted to elements of size <= k, for each k.
    layer_counts = []
    for k in range(sum_bound + 1):
        layer_counts.append(len({class_of[v] for v in elements if sum(v) <= k}))

    congruence_ok = _congruence_check(elements, class_of, profiles, profiler,
                                      atom_count, sum_bound)
    stable = sum_bound >= 2 and layer_counts[-1] == layer_counts[-2] and congruence_ok
    status = FINITE if stable else NOT_STABILIZED

    relations = []
    lhs_vectors: list[Vector] = []
    for vec in elements:
        if any(all(x >= y for x, y in zip(vec, lhs)) for lhs in lhs_vectors):
            continue
        rep = classes[class_of[vec]].representative
        if rep != vec:
            relations.append((format_word(vec, symbols), format_word(rep, symbols)))
            lhs_vectors.append(vec)

    witnesses = []
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            if len(witnesses) >= max_witnesses:
                break
            k = next(t for t, (x, y) in enumerate(zip(profiles[i], profiles[j])) if x != y)
            witnesses.append({
                "pair": [classes[i].word, classes[j].word],
                "context": format_word(contexts[k], symbols),
                "outcomes": [profiles[i][k].value, profiles[j][k].value],
            })

    return QuotientReport(
        generators=list(generators),
        atoms=list(range(atom_count)),
        symbols=list(symbols),
        classes=classes,
        relations=relations,
        status=status,
        sum_bound=sum_bound,
        context_bound=context_bound,
        witnesses=witnesses,
        congruence_ok=congruence_ok,
        layer_class_counts=layer_counts,
        labels=list(labels),
        contexts=contexts,
        profiles=profiles,
        class_of_vector=class_of,
        outcome_fn=outcome,
        profiler=profiler,
    )


def _congruence_check(elements, class_of, profiles, profiler, atom_count,
                      sum_bound) -> bool:
    """Adding an atom must respect the classes, and land in a known class."""
    profile_index = {p: i for i, p in enumerate(profiles)}
    units = [tuple(int(i == j) for j in range(atom_count)) for i in range(atom_count)]
    first_member: dict[int, Vector] = {}
    for vec in elements:
        first_member.setdefault(class_of[vec], vec)
    for vec in elements:
        rep = first_member[class_of[vec]]
        for unit in units:
            shifted = _add(vec, unit)
            if sum(shifted) <= sum_bound:
                target = class_of[shifted]
            else:
                prof = profiler.profile(shifted)
                target = profile_index.get(prof)
                if target is None:
                    return False
            rep_shift = _add(rep, unit)
            if sum(rep_shift) <= sum_bound:
                if class_of[rep_shift] != target:
                    return False
    return True


def compute_quotient(generators: Sequence[int], sum_bound: int = 6,
                     context_bound: int = 6) -> QuotientReport:
    """Bounded misère quotient of the closure of the generators."""
    base = option_closure(generators)
    atoms = base.atoms
    symbols = symbol_names(atoms)

    def outcome_fn(vec):
        return misere_outcome(_vector_to_sum(atoms, vec))

    report = quotient_from_oracle(
        outcome_fn, len(atoms), symbols, [format_position(a) for a in atoms],
        sum_bound, context_bound, [format_position(g) for g in generators],
    )
    report.atoms = list(atoms)
    return report


# ---------------------------------------------------------------------------
# Posets


@dataclass
class PosetReport:
    words: list
    order: list  # strict pairs (greater, lesser) as class indices
    covers: list
    incomparability_witnesses: dict
    down_directed: bool
    up_directed: bool
    lattice: bool
    bottom: Optional[int]
    top: Optional[int]

    def geq(self, i: int, j: int) -> bool:
        return i == j or (i, j) in set(self.order)

    def cover_words(self) -> set:
        return {(self.words[i], self.words[j]) for i, j in self.covers}

    def to_dict(self) -> dict:
        return {
            "order": sorted([self.words[i], self.words[j]] for i, j in self.order),
            "covers": sorted([self.words[i], self.words[j]] for i, j in self.covers),
            "incomparable": {
                f"{self.words[i]} | {self.words[j]}": list(w)
                for (i, j), w in sorted(self.incomparability_witnesses.items())
            },
            "properties": {
                "down_directed": self.down_directed,
                "up_directed": self.up_directed,
                "lattice": self.lattice,
                "bottom": None if self.bottom is None else self.words[self.bottom],
                "top": None if self.top is None else self.words[self.top],
            },
        }

    def to_dot(self) -> str:
        lines = ["digraph poset {", "  rankdir=BT;"]
        for i, w in enumerate(self.words):
            lines.append(f'  c{i} [label="{w}"];')
        for hi, lo in sorted(self.covers):
            lines.append(f"  c{lo} -> c{hi};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def compute_poset(q: QuotientReport, allow_unstabilized: bool = False) -> PosetReport:
    """Order classes by comparing outcomes in every tested context."""
    if q.status != FINITE and not allow_unstabilized:
        raise UnsupportedInputError("poset needs a quotient that stabilized at its bound")
    n = len(q.classes)
    words = q.words
    contexts = q.contexts
    geq = [[True] * n for _ in range(n)]
    first_fail: dict[tuple[int, int], int] = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for k, (x, y) in enumerate(zip(q.profiles[i], q.profiles[j])):
                if not outcome_geq(x, y):
                    geq[i][j] = False
                    first_fail[(i, j)] = k
                    break
    order = [(i, j) for i in range(n) for j in range(n) if i != j and geq[i][j]]
    order_set = set(order)
    covers = [
        (i, j) for (i, j) in order
        if not any((i, k) in order_set and (k, j) in order_set for k in range(n))
    ]
    witnesses = {}
    for i in range(n):
        for j in range(i + 1, n):
            if not geq[i][j] and not geq[j][i]:
                witnesses[(i, j)] = (
                    q.describe_vector(contexts[first_fail[(i, j)]]),
                    q.describe_vector(contexts[first_fail[(j, i)]]),
                )
    bottoms = [i for i in range(n) if all(geq[j][i] for j in range(n))]
    tops = [i for i in range(n) if all(geq[i][j] for j in range(n))]

    def has_bound(i, j, upper):
        cands = [k for k in range(n) if (geq[k][i] and geq[k][j] if upper else
                                         geq[i][k] and geq[j][k])]
        if not cands:
            return False, None
        best = [k for k in cands if all((geq[c][k] if upper else geq[k][c]) for c in cands)]
        return True, (best[0] if best else None)

    down = all(has_bound(i, j, False)[0] for i in range(n) for j in range(n))
    up = all(has_bound(i, j, True)[0] for i in range(n) for j in range(n))
    lattice = all(
        has_bound(i, j, True)[1] is not None and has_bound(i, j, False)[1] is not None
        for i in range(n) for j in range(n)
    )
    return PosetReport(
        words=words,
        order=order,
        covers=covers,
        incomparability_witnesses=witnesses,
        down_directed=down,
        up_directed=up,
        lattice=lattice,
        bottom=bottoms[0] if bottoms else None,
        top=tops[0] if tops else None,
    )


def conjugate_order_check(q: QuotientReport, allow_unstabilized: bool = False) -> bool:
    """Conjugation must reverse the order and keep incomparable pairs incomparable."""
    atoms = list(q.atoms)
    if not all(isinstance(a, int) for a in atoms) or not atoms:
        raise PreconditionError("conjugate check needs a quotient over positions")
    index = {a: i for i, a in enumerate(atoms)}
    perm = []
    for a in atoms:
        c = conjugate(a)
        if c not in index:
            raise PreconditionError("generator set is not closed under conjugation")
        perm.append(index[c])
    poset = compute_poset(q, allow_unstabilized=allow_unstabilized)
    conj_class = []
    for c in q.classes:
        vec = [0] * len(atoms)
        for i, k in enumerate(c.representative):
            vec[perm[i]] += k
        conj_class.append(q.class_index(tuple(vec)))
    n = len(q.classes)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if poset.geq(i, j) != poset.geq(conj_class[j], conj_class[i]):
                return False
    return True
