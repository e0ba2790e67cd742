"""Random fair-division instances and their default-logic encoding.

Generator (version 1, byte-stable): a splitmix64 stream seeded with the
instance seed.  ``uniform()`` is ``(next() >> 11) * 2**-53``.  For each agent
``P = 1``; while ``uniform() < P`` a nonempty bundle is drawn (``g`` random
bits per draw, redrawn while zero; bit ``j`` selects good ``j + 1``), added to
the agent's acceptable set and ``P *= (g - 1) / g``.

Encoding: atom ``o_i_j`` says agent ``i`` owns good ``j``.  ``W`` holds, per
good, the formula "exactly one agent owns it", and, per agent, the
disjunction over its acceptable bundles of the exact ownership pattern.
``D`` holds ``: o / o`` and ``: ~o / ~o`` for every atom, so extensions are
complete and correspond one-to-one to solutions.  A solution is an
allocation of every good to one agent such that each agent's bundle is
exactly one of its acceptable bundles.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from ..embeddings import Default, DefaultTheory
from ..prop import Atom, Not, conj, disj

GENERATOR_VERSION = 1
MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK64

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def uniform(self):
        return (self.next() >> 11) * 2.0**-53

    def bits(self, n):
        return self.next() & ((1 << n) - 1)


@dataclass(frozen=True)
class FairDivisionInstance:
    agents: int
    goods: int
    acceptable: tuple  # per agent: tuple of sorted good tuples (1-based)
    seed: int

    def to_json(self):
        return json.dumps(
            {
                "version": GENERATOR_VERSION,
                "agents": self.agents,
                "goods": self.goods,
                "seed": self.seed,
                "acceptable": [[list(b) for b in bundles] for bundles in self.acceptable],
            },
            sort_keys=True,
        )


def owns(i, j):
    return Atom(f"o_{i}_{j}")


def draw_instance(agents, goods, seed) -> FairDivisionInstance:
    if agents < 1 or goods < 1:
        raise ValueError("need at least one agent and one good")
    rng = SplitMix64(seed)
    acceptable = []
    for _ in range(agents):
        bundles = {}
        p = 1.0
        while rng.uniform() < p:
            mask = 0
            while mask == 0:
                mask = rng.bits(goods)
            bundles[tuple(j + 1 for j in range(goods) if mask >> j & 1)] = None
            p *= (goods - 1) / goods
        acceptable.append(tuple(sorted(bundles)))
    return FairDivisionInstance(agents, goods, tuple(acceptable), seed)


def encode(inst: FairDivisionInstance) -> DefaultTheory:
    W = []
    agents, goods = range(1, inst.agents + 1), range(1, inst.goods + 1)
    for j in goods:
        some = disj([owns(i, j) for i in agents])
        at_most = [Not(owns(i, j) & owns(k, j)) for i, k in itertools.combinations(agents, 2)]
        W.append(conj([some, *at_most]))
    for i, bundles in zip(agents, inst.acceptable):
        W.append(disj([conj([owns(i, j) if j in b else Not(owns(i, j)) for j in goods]) for b in bundles]))
    D = []
    for i in agents:
        for j in goods:
            o = owns(i, j)
            D.append(Default(justifications=(o,), consequent=o))
            D.append(Default(justifications=(Not(o),), consequent=Not(o)))
    return DefaultTheory(W, D)


def gen_fair_division(agents, goods, seed):
    inst = draw_instance(agents, goods, seed)
    return inst, encode(inst)


def solutions_brute_force(inst: FairDivisionInstance):
    """All allocations (tuple: owner of each good) satisfying every agent."""
    out = []
    for owner in itertools.product(range(1, inst.agents + 1), repeat=inst.goods):
        ok = all(
            tuple(j for j in range(1, inst.goods + 1) if owner[j - 1] == i) in bundles
            for i, bundles in enumerate(inst.acceptable, 1)
        )
        if ok:
            out.append(owner)
    return out


def allocation_of(true_atoms, inst: FairDivisionInstance):
    """Owner tuple from the set of ``o_i_j`` atom names known true."""
    owner = []
    for j in range(1, inst.goods + 1):
        holders = [i for i in range(1, inst.agents + 1) if f"o_{i}_{j}" in true_atoms]
        if len(holders) != 1:
            return None
        owner.append(holders[0])
    return tuple(owner)
