"""Rational fans, subdivision towers and the dimension of their face posets.

A tower starts from the dual cone of a monoid with all its faces and refines
it stage by stage with blow-up fans, recording for every new maximal cone the
old maximal cone containing it.
"""
import logging
from dataclasses import dataclass, field

from pydotplus import graph_from_edges
from pydotplus.graphviz import Edge, Node

from .cones import Cone, lattice_points, uncovered_point
from .exceptions import BaseMismatch, EmptyIdeal, NotAFan, NotRefining
from .lattice import neg, sub
from .monoids import LatticeMonoid

logger = logging.getLogger(__name__)


def _digraph(name):
    graph = graph_from_edges([], directed=True)
    graph.set_name(name)
    graph.set_rankdir('BT')
    return graph


def _label(cone):
    rays = ' '.join(str(list(r)) for r in cone.rays) or '0'
    return f'"{rays}"'


class RationalFan:
    """A finite fan given by its maximal cones.

    The fan condition (pairwise intersections are faces of both cones) is
    checked on construction, as is containment in the declared support.
    """

    def __init__(self, cones, support=None):
        cones = sorted(set(cones), key=lambda c: (-c.dimension, c.key))
        maximal = []
        for cone in cones:
            if not any(other.contains_cone(cone) for other in maximal):
                maximal.append(cone)
        self.maximal_cones = tuple(sorted(maximal, key=lambda c: c.key))
        self.support = support
        if support is not None:
            self.ambient_dim = support.ambient_dim
        else:
            self.ambient_dim = self.maximal_cones[0].ambient_dim if self.maximal_cones else 0
        for i, first in enumerate(self.maximal_cones):
            if support is not None and not support.contains_cone(first):
                raise NotAFan(f'{first!r} sticks out of {support!r}')
            for second in self.maximal_cones[i + 1:]:
                meet = first.intersection(second)
                if not (meet.is_face_of(first) and meet.is_face_of(second)):
                    raise NotAFan(f'{first!r} and {second!r} do not meet in a common face')

    @classmethod
    def face_fan(cls, cone):
        return cls([cone], support=cone)

    def __eq__(self, other):
        if not isinstance(other, RationalFan):
            return NotImplemented
        return self.maximal_cones == other.maximal_cones

    def __hash__(self):
        return hash(self.maximal_cones)

    def __repr__(self):
        return f'RationalFan({list(self.maximal_cones)})'

    def __len__(self):
        return len(self.maximal_cones)

    @property
    def dimension(self):
        return max((c.dimension for c in self.maximal_cones), default=0)

    def faces(self):
        seen = {}
        for cone in self.maximal_cones:
            for face in cone.faces():
                seen.setdefault(face.key, face)
        return sorted(seen.values(), key=lambda c: (c.dimension, c.key))

    def covers_support(self):
        if self.support is None:
            return True
        return uncovered_point(self.support, self.maximal_cones) is None

    def common_refinement(self, other):
        """Full-dimensional pairwise intersections of the maximal cones."""
        return self.cut_by(other.maximal_cones)

    def cut_by(self, pieces):
        """Full-dimensional intersections of the maximal cones with ``pieces``.

        The pieces must form a fan whose support contains this one.
        """
        dimension = self.dimension
        cones = [a.intersection(b) for a in self.maximal_cones for b in pieces]
        return RationalFan([c for c in cones if c.dimension == dimension], support=self.support)

    def containment_table(self, coarser):
        """For each maximal cone, the index of a maximal cone of ``coarser`` containing it."""
        table = []
        for cone in self.maximal_cones:
            for index, old in enumerate(coarser.maximal_cones):
                if old.contains_cone(cone):
                    table.append(index)
                    break
            else:
                raise NotRefining(f'{cone!r} lies in no cone of the previous stage')
        return tuple(table)

    def to_dot(self, name='fan'):
        faces = self.faces()
        index = {f.key: i for i, f in enumerate(faces)}
        graph = _digraph(name)
        for i, face in enumerate(faces):
            graph.add_node(Node(f'c{i}', label=_label(face)))
        for face in faces:
            for facet in face.facet_cones():
                if facet.key in index:
                    graph.add_edge(Edge(f'c{index[facet.key]}', f'c{index[face.key]}'))
        return graph.to_string()


def chart_monoid_of(cone, lattice):
    """The saturated monoid of lattice points pairing nonnegatively with ``cone``."""
    units, lifts = lattice_points(cone.dual(), lattice)
    return LatticeMonoid(units + [neg(u) for u in units] + lifts, lattice.ambient_rank,
                         normalize=False, saturated=True)


@dataclass(frozen=True)
class Stage:
    fan: RationalFan
    ideal: object = None
    chart: int = None
    transition: tuple = field(default=())


class SubdivisionTower:
    """Finite stages of iterated blow-ups over the dual cone of ``base``."""

    def __init__(self, base, stages=None):
        self.base = base
        if stages is None:
            stages = (Stage(RationalFan.face_fan(base.cone.dual())),)
        self.stages = tuple(stages)

    def __len__(self):
        return len(self.stages)

    def __repr__(self):
        return f'SubdivisionTower({self.base!r}, {len(self.stages)} stages)'

    @property
    def current(self):
        return self.stages[-1].fan

    def to_dot(self):
        graph = _digraph('tower')
        for depth, stage in enumerate(self.stages):
            for i, cone in enumerate(stage.fan.maximal_cones):
                graph.add_node(Node(f's{depth}c{i}', label=_label(cone)))
            for i, parent in enumerate(stage.transition):
                graph.add_edge(Edge(f's{depth}c{i}', f's{depth - 1}c{parent}'))
        return graph.to_string()


def subdivision_stage(tower, ideal, chart_selector=None):
    """Refine the last stage of ``tower`` by the blow-up fan of ``ideal``.

    Without a selector the ideal lives on the base monoid and the whole stage
    is refined. With a selector the ideal lives on the chart monoid of that
    maximal cone. The regions where one generator of the ideal is smallest
    then cover the whole space, and every cone is cut along them, so the
    neighbours of the chart are refined to match its subdivision.
    """
    from .ideals import blowup_fan

    current = tower.current
    if chart_selector is None:
        if ideal.base != tower.base:
            raise BaseMismatch('ideal does not live on the base monoid of the tower')
        refined = current.common_refinement(blowup_fan(ideal))
    else:
        selected = current.maximal_cones[chart_selector]
        if ideal.base != chart_monoid_of(selected, tower.base.gp_lattice):
            raise BaseMismatch(f'ideal does not live on the chart monoid of {selected!r}')
        if not ideal.generators:
            raise EmptyIdeal('cannot blow up the empty ideal')
        n = current.ambient_dim
        regions = [Cone.from_inequalities([sub(h, g) for h in ideal.generators], n)
                   for g in ideal.generators]
        refined = current.cut_by(regions)
    transition = refined.containment_table(current)
    if not refined.covers_support():
        raise NotRefining('the new stage does not cover the dual cone')
    logger.debug('stage %d: %d maximal cones', len(tower.stages), len(refined))
    stage = Stage(refined, ideal, chart_selector, transition)
    return SubdivisionTower(tower.base, tower.stages + (stage,))


def poset_krull_dim(fan):
    """Length of the longest strict chain of faces, minus one."""
    faces = fan.faces()
    if not faces:
        return 0
    longest = {}
    for face in faces:
        below = [longest[g.key] for g in faces
                 if g.dimension < face.dimension and face.contains_cone(g)]
        longest[face.key] = 1 + max(below, default=0)
    return max(longest.values()) - 1
