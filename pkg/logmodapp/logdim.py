import logging
from dataclasses import dataclass

from .exceptions import EmptyStratification, NotSharp
from .monoids import LatticeMonoid, localize_at_face, monoid_faces, sharpen

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Stratum:
    name: str
    closure_dim: int
    char_monoid: LatticeMonoid

    def __post_init__(self):
        if not self.char_monoid.is_sharp:
            raise NotSharp(f'characteristic monoid of {self.name} has units')
        if self.closure_dim < 0:
            raise ValueError(f'stratum {self.name} has negative dimension')

    @property
    def log_dim(self):
        return self.closure_dim + max(self.char_monoid.rank - 1, 0)


class Stratification:
    """Strata with their closure dimensions and sharp characteristic monoids."""

    def __init__(self, strata):
        self.strata = tuple(strata)
        names = [s.name for s in self.strata]
        if len(set(names)) != len(names):
            raise ValueError('stratum names must be unique')

    def __iter__(self):
        return iter(self.strata)

    def __len__(self):
        return len(self.strata)

    def __eq__(self, other):
        if not isinstance(other, Stratification):
            return NotImplemented
        return self.strata == other.strata

    def __hash__(self):
        return hash(self.strata)


def log_dim(stratification):
    """Max over strata of closure_dim + max(rank - 1, 0) of the characteristic group."""
    if not len(stratification):
        raise EmptyStratification('log dimension of an empty stratification')
    return max(s.log_dim for s in stratification)


def _face_name(face):
    return 'face[' + ';'.join(','.join(str(c) for c in g) for g in face.generators) + ']'


def toric_stratification(monoid):
    """One stratum per face F: closure dimension rank F, characteristic P localized at F
    and sharpened.
    """
    strata = []
    for face in monoid_faces(monoid):
        char = sharpen(localize_at_face(monoid, face)).sharp
        strata.append(Stratum(_face_name(face), face.rank, char))
    logger.debug('toric stratification of %r: %d strata', monoid, len(strata))
    return Stratification(strata)
