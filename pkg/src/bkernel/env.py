"""Finite proof environments and the freshness side conditions over them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .binders import free, free_vars
from .terms import MACHINE, Pred, Term, Var


class ProofEnv:
    """A finite set of predicates kept in first-insertion order.

    Equality and hashing are set-based, so two environments listing the same
    predicates in a different order are the same environment.
    """

    __slots__ = ("_preds", "_set")

    def __init__(self, preds: Iterable[Pred] = ()):
        seen: dict[Pred, None] = {}
        for p in preds:
            if not isinstance(p, Pred):
                raise TypeError(f"environment entries must be predicates, got {p!r}")
            seen.setdefault(p, None)
        self._preds = tuple(seen)
        self._set = frozenset(self._preds)

    def __iter__(self) -> Iterator[Pred]:
        return iter(self._preds)

    def __len__(self):
        return len(self._preds)

    def __contains__(self, p) -> bool:
        return p in self._set

    def __eq__(self, other):
        if not isinstance(other, ProofEnv):
            return NotImplemented
        return self._set == other._set

    def __hash__(self):
        return hash(self._set)

    def __le__(self, other: "ProofEnv") -> bool:
        return self._set <= other._set

    def __repr__(self):
        return "ProofEnv(" + ", ".join(map(repr, self._preds)) + ")"

    def member(self, p: Pred) -> bool:
        return p in self._set

    def add(self, *ps: Pred) -> "ProofEnv":
        return ProofEnv(self._preds + ps)

    def remove(self, p: Pred) -> "ProofEnv":
        return ProofEnv(q for q in self._preds if q != p)

    def union(self, other: "ProofEnv") -> "ProofEnv":
        return ProofEnv(self._preds + other._preds)


EMPTY = ProofEnv()


@dataclass(frozen=True)
class Sequent:
    env: ProofEnv
    concl: Pred


def env_free(v: Var, env: ProofEnv) -> bool:
    return any(free(v, 0, p) for p in env)


def env_free_vars(env: ProofEnv) -> set[Var]:
    out: set[Var] = set()
    for p in env:
        out |= free_vars(p)
    return out


def fresh(ns: str, env: ProofEnv = EMPTY, extra: Iterable[Term] = ()) -> Var:
    taken = {v.idx for v in env_free_vars(env) if v.ns == ns}
    for t in extra:
        taken |= {v.idx for v in free_vars(t) if v.ns == ns}
    k = 0
    while k in taken:
        k += 1
    return Var(ns, k)


def disjoint_n0(env: ProofEnv, p: Pred) -> bool:
    mine = {v for v in free_vars(p) if v.ns == MACHINE}
    if not mine:
        return True
    return not any(v in mine for v in env_free_vars(env))
