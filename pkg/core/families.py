import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from core.errors import FamilyError
from core.functions import is_half_odd
from core.graph import (
    MAX_ORDER,
    Graph,
    complete,
    components,
    cycle,
    disjoint_union,
    matching,
)
from core.report import LawId


class FamilyKind(str, Enum):
    ALL_MATCHING = "all-matching"
    COMPLETE_PLUS_MATCHING = "k-matching"
    ODD_CYCLE_PLUS_MATCHING = "c-matching"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class FamilyDescriptor:
    """Symbolic name of an extremal graph

    tK2 (kind all-matching, s unused and stored as 0), K_{s+1} + (t-s)K2
    (k-matching) or C_{2s-1} + (t-s)K2 (c-matching), always with 2 <= s <= t.
    t is the transversal number of the whole graph.
    """

    kind: FamilyKind
    s: int
    t: int

    def __post_init__(self) -> None:
        if self.kind is FamilyKind.ALL_MATCHING:
            if self.t < 1 or self.s != 0:
                raise FamilyError(f"all-matching needs t >= 1 and no s, got s={self.s} t={self.t}")
        elif not 2 <= self.s <= self.t:
            raise FamilyError(f"{self.kind} needs 2 <= s <= t, got s={self.s} t={self.t}")

    @property
    def matchings(self) -> int:
        "Number of K2 components besides the main part"

        return self.t if self.kind is FamilyKind.ALL_MATCHING else self.t - self.s

    @property
    def part_order(self) -> int:
        if self.kind is FamilyKind.COMPLETE_PLUS_MATCHING:
            return self.s + 1
        if self.kind is FamilyKind.ODD_CYCLE_PLUS_MATCHING:
            return 2 * self.s - 1
        return 0

    @property
    def n(self) -> int:
        return self.part_order + 2 * self.matchings

    def canonical(self) -> "FamilyDescriptor":
        "C3 and K3 are the same graph; the complete reading wins"

        if self.kind is FamilyKind.ODD_CYCLE_PLUS_MATCHING and self.s == 2:
            return FamilyDescriptor(FamilyKind.COMPLETE_PLUS_MATCHING, 2, self.t)
        return self

    def __str__(self) -> str:
        if self.kind is FamilyKind.ALL_MATCHING:
            return f"{self.t}K2"

        letter = "K" if self.kind is FamilyKind.COMPLETE_PLUS_MATCHING else "C"
        text = f"{letter}{self.part_order}"
        if self.matchings:
            text += f"+{self.matchings}K2"
        return text

    @classmethod
    def parse(cls, text: str) -> "FamilyDescriptor":
        "Reads 'K5+2K2', 'C7+1K2', 'C5' or '4K2'"

        match = _COMPACT.fullmatch(text.strip())
        if match is None:
            raise FamilyError(f"Not a family descriptor: {text!r}")

        letter, order, count = match.group("letter"), match.group("order"), match.group("count")
        if letter is None and count is None:
            raise FamilyError(f"Not a family descriptor: {text!r}")
        if letter is None and match.group("plus"):
            raise FamilyError(f"Not a family descriptor: {text!r}")
        if letter is not None and count is not None and not match.group("plus"):
            raise FamilyError(f"Not a family descriptor: {text!r}")

        return from_parts(
            letter, int(order) if order else 0, int(count) if count else 0
        )


_COMPACT = re.compile(r"(?:(?P<letter>[KC])(?P<order>\d+))?(?P<plus>\+)?(?:(?P<count>\d+)K2)?")


def from_parts(letter: Optional[str], order: int, matchings: int) -> FamilyDescriptor:
    "Canonical descriptor of (K_order or C_order or nothing) + matchings K2"

    if matchings < 0:
        raise FamilyError(f"Matching count must be non-negative, got {matchings}")

    if letter is None:
        return FamilyDescriptor(FamilyKind.ALL_MATCHING, 0, matchings)
    if letter == "K":
        if order == 2:
            return FamilyDescriptor(FamilyKind.ALL_MATCHING, 0, matchings + 1)
        if order < 2:
            raise FamilyError(f"K{order} is not part of any extremal family")
        return FamilyDescriptor(FamilyKind.COMPLETE_PLUS_MATCHING, order - 1, order - 1 + matchings)
    if letter == "C":
        if order < 3 or order % 2 == 0:
            raise FamilyError(f"C{order} is not an odd cycle")
        s = (order + 1) // 2
        return FamilyDescriptor(FamilyKind.ODD_CYCLE_PLUS_MATCHING, s, s + matchings).canonical()

    raise FamilyError(f"Unknown part {letter!r}")


def complete_descriptor(t: int) -> FamilyDescriptor:
    "K_{t+1}; for t = 1 that is K2 = 1K2"

    return from_parts("K", t + 1, 0)


def build_family(d: FamilyDescriptor) -> Graph:
    if d.n > MAX_ORDER:
        raise FamilyError(f"{d} has {d.n} vertices, limit is {MAX_ORDER}")

    if d.kind is FamilyKind.COMPLETE_PLUS_MATCHING:
        part = complete(d.s + 1)
    elif d.kind is FamilyKind.ODD_CYCLE_PLUS_MATCHING:
        part = cycle(2 * d.s - 1)
    else:
        return matching(d.t)
    return disjoint_union(part, matching(d.matchings))


def match_family(g: Graph) -> Optional[FamilyDescriptor]:
    "Recognises tK2, K_{s+1} + (t-s)K2 and C_{2s-1} + (t-s)K2 from the components"

    pairs = 0
    special: list[Graph] = []
    for _, part in components(g):
        if part.n == 2:
            pairs += 1
        elif part.n < 2:
            return None
        else:
            special.append(part)

    if len(special) > 1:
        return None
    if not special:
        return from_parts(None, 0, pairs) if pairs else None

    part = special[0]
    p = part.n
    if part.m == p * (p - 1) // 2:
        return from_parts("K", p, pairs)
    if p % 2 == 1 and part.m == p and all(part.degree(v) == 2 for v in range(p)):
        # Connected and 2-regular, hence a cycle
        return from_parts("C", p, pairs)
    return None


_LAWS_WITHOUT_R = frozenset({LawId.EHM, LawId.GL, LawId.NLAM, LawId.LAM1, LawId.NQ1, LawId.Q1})
_LAWS_WITH_INTEGER_R = frozenset({LawId.RVPE, LawId.SPECT, LawId.QSPECT})


def _literal_list(law: LawId, r: Optional[Fraction], t: int) -> list[tuple[Optional[str], int, int]]:
    "The extremal graphs exactly as listed for each law, as (part, order, matchings) triples"

    if law in (LawId.EHM, LawId.LAM1, LawId.Q1):
        return [("K", t + 1, 0)]
    if law is LawId.GL:
        return [("K", t + 1, 0), (None, 0, 2), ("C", 5, 0)]
    if law in (LawId.NLAM, LawId.NQ1):
        entries: list[tuple[Optional[str], int, int]] = [(None, 0, t)]
        entries += [("K", s + 1, t - s) for s in range(2, t + 1)]
        entries += [("C", 2 * s - 1, t - s) for s in range(3, t + 1)]
        return entries

    assert r is not None
    if law is LawId.RVPE:
        k = int(r)
        if k == 0:
            return [("K", t + 1, 0)]
        if k == 1:
            return _literal_list(LawId.GL, None, t)
        return [(None, 0, k), (None, 0, k + 1), ("C", 2 * k + 1, 0), ("C", 2 * k + 3, 0)]

    if law in (LawId.SPECT, LawId.QSPECT):
        k = int(r)
        if k == 0:
            return [("K", t + 1, 0)]
        if k == 1:
            # K_t + K2 for t = 2 is 2K2
            return [("K", t + 1, 0), ("K", t, 1), ("C", 5, 0)]
        entries = [(None, 0, k), (None, 0, k + 1), ("K", t - k + 2, k - 1)]
        if k <= t - 2:
            entries.append(("K", t - k + 1, k))
        entries += [("C", 2 * s - 1, k + 1 - s) for s in range(2, k + 2)]
        entries += [("C", 2 * s - 1, k + 2 - s) for s in range(2, k + 3)]
        return entries

    if law is LawId.HALF:
        if not is_half_odd(r):
            return []
        # r = k + 1/2; the matching count r - 1/2 is read as the integer k
        k = int(r - Fraction(1, 2))
        entries = [("K", t + 1, 0)] if k == 0 else []
        entries.append((None, 0, k + 1))
        if t - k + 1 >= 2:
            entries.append(("K", t - k + 1, k))
        entries += [("C", 2 * s - 1, k + 2 - s) for s in range(2, k + 3)]
        return entries

    raise FamilyError(f"{law} has no characterised extremal graphs")


def equality_list(
    law: LawId,
    r: Optional[Fraction],
    t: int,
    max_order: Optional[int] = None,
) -> tuple[FamilyDescriptor, ...]:
    """Every graph with transversal number t attaining equality in law, as listed for that law

    Entries with a different transversal number are dropped, the C3/K3 and
    K2/1K2 ambiguities are resolved canonically and duplicates merged.
    """

    law = LawId(law)
    if t < 1:
        raise FamilyError(f"t must be positive, got {t}")

    if law in _LAWS_WITHOUT_R:
        if r is not None:
            raise FamilyError(f"{law} takes no r parameter")
    elif law in _LAWS_WITH_INTEGER_R:
        if r is None or Fraction(r).denominator != 1 or r < 0:
            raise FamilyError(f"{law} needs an integer r >= 0, got {r}")
        if r > t:
            raise FamilyError(f"{law} needs r <= t, got r={r} t={t}")
        r = Fraction(r)
    elif law is LawId.HALF:
        if r is None or r < 0:
            raise FamilyError(f"{law} needs a real r >= 0, got {r}")
        r = Fraction(r)
    else:
        raise FamilyError(f"{law} has no characterised extremal graphs")

    found: set[FamilyDescriptor] = set()
    for letter, order, count in _literal_list(law, r, t):
        try:
            d = from_parts(letter, order, count)
        except FamilyError:
            continue
        if d.t == t and (max_order is None or d.n <= max_order):
            found.add(d)

    return tuple(sorted(found, key=lambda d: (d.n, str(d))))
