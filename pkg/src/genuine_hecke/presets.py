"""Named cover configurations and random samplers shared by tests and scripts."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cover_torus import GenuineCharacter
from .quad_cover import QuadraticCoverData
from .root_datum import (ExtendedAffineElement, RootDatum, build_preset, length, weyl_group)
from .tame_arith import TameField


@dataclass(frozen=True)
class CoverConfig:
    preset: str
    size: int
    D: tuple[tuple[int, ...], ...]
    n: int
    p: int
    f: int = 1

    @property
    def datum(self) -> RootDatum:
        return build_preset(self.preset, self.size)

    @property
    def field(self) -> TameField:
        return TameField(self.p, self.f, self.n)

    @property
    def cover(self) -> QuadraticCoverData:
        return QuadraticCoverData(self.datum, self.D, self.n)

    def character(self, m) -> GenuineCharacter:
        return GenuineCharacter(self.field, self.cover, tuple(m))

    def linear(self) -> "CoverConfig":
        """The same group with n = 1 and D = 0."""
        r = len(self.D)
        return CoverConfig(self.preset, self.size, tuple((0,) * r for _ in range(r)), 1, self.p, self.f)


CONFIGS: dict[str, CoverConfig] = {
    "SL2": CoverConfig("SL", 2, ((1,),), 4, 3, 2),
    "SL3": CoverConfig("SL", 3, ((1, -1), (0, 1)), 2, 7),
    "GL2": CoverConfig("GL", 2, ((1, -2), (0, 1)), 4, 5),
    "Sp4": CoverConfig("Sp", 4, ((2, -2), (0, 1)), 4, 5),
}


def random_character(cfg: CoverConfig, rng: random.Random) -> GenuineCharacter:
    q1 = cfg.field.order
    return cfg.character(tuple(rng.randrange(q1) for _ in range(len(cfg.D))))


def random_element(datum: RootDatum, rng: random.Random, max_length: int = 4,
                   box: int = 2) -> ExtendedAffineElement:
    """A Weyl element times a translation from [-box, box]^r, rejected until length <= max_length."""
    W = weyl_group(datum)
    while True:
        w = rng.choice(W)
        y = tuple(rng.randint(-box, box) for _ in range(datum.rank))
        x = ExtendedAffineElement(w, y)
        if length(datum, x) <= max_length:
            return x
