"""Bridge between almost automorphisms and the one-sided shift model.

The orbit graph of a colour group carries a one-sided shift of finite type.
Finite oriented paths whose terminal vertex is an orbit vertex correspond
bijectively to vertices of the coloured tree, and the topological full
group of the shift groupoid corresponds to the dense subgroup generated by
tree-pair elements.  This module realises that dictionary concretely:

* paths are encoded as colour-label words (one label per orbit-vertex
  visit, so an interrupted loop through a delta vertex is a single label
  but two graph edges),
* ``Omega`` translates label words to tree addresses and back, letter by
  letter, using the canonical colour transports,
* ``Bisection`` is the shift-side normal form of an element: a finite list
  of (source path, shift offset, target path) triples whose source and
  target cylinders each partition the path space.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .abelianization import SftGraph, build_sft_graph, sft_graph_for_group
from .almost_automorphisms import make_element, random_element
from .permutations import ColourGroup, closure_enumerate, from_cycles
from .tree import plane_for


class PathError(ValueError):
    """A label word that does not describe a path in the orbit graph."""


class InvalidBisection(ValueError):
    def __init__(self, report):
        super().__init__("; ".join(report.problems) or "invalid bisection")
        self.report = report


def _orbit_lookup(graph):
    orbit_of = {}
    rep_of = {}
    for i, block in enumerate(graph.orbit_colours):
        rep = min(block)
        for colour in block:
            orbit_of[colour] = i
            rep_of[colour] = rep
    return orbit_of, rep_of


@dataclass(frozen=True, order=True)
class EdgePath:
    """A finite oriented path ending at an orbit vertex, as a label word.

    The k-th label is the colour attached (via the child identifications)
    to the k-th hop between orbit vertices.  A label in the same orbit as
    its predecessor stands for an interrupted loop (two graph edges); a
    label in a different orbit stands for a direct edge.  The first label
    selects the child of the path-tree root: the orbit representative
    stands for the zero-length path based at that orbit vertex, any other
    colour for the single edge leaving a delta vertex.
    """

    labels: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))

    def __len__(self):
        return len(self.labels)

    def is_prefix_of(self, other):
        return self.labels == other.labels[: len(self.labels)]


def check_path(path, graph):
    labels = path.labels
    if not labels:
        raise PathError("empty label word does not name a path")
    orbit_of, rep_of = _orbit_lookup(graph)
    for k, c in enumerate(labels):
        if c not in orbit_of:
            raise PathError("label %r is not a colour of the graph" % (c,))
        if k > 0 and c == rep_of[labels[k - 1]]:
            raise PathError(
                "label %d after a label in the orbit of %d must avoid the "
                "representative %d" % (c, labels[k - 1], c)
            )
    return path


def path_is_valid(path, graph):
    try:
        check_path(path, graph)
    except PathError:
        return False
    return True


def edge_length(path, graph):
    """Number of graph edges traversed by the path.

    The zero-length root child contributes 0, a delta start edge 1, a
    direct hop 1 and an interrupted loop 2.
    """
    orbit_of, rep_of = _orbit_lookup(graph)
    labels = path.labels
    total = 0
    for k, c in enumerate(labels):
        if k == 0:
            total += 0 if c == rep_of[c] else 1
        elif orbit_of[c] == orbit_of[labels[k - 1]]:
            total += 2
        else:
            total += 1
    return total


def terminal_orbit(path, graph):
    orbit_of, _ = _orbit_lookup(graph)
    return orbit_of[path.labels[-1]]


def cylinder_mass(path, graph):
    d = graph.d
    return Fraction(1, (d + 1) * d ** (len(path) - 1))


def path_children(path, graph):
    orbit_of, rep_of = _orbit_lookup(graph)
    rep = rep_of[path.labels[-1]]
    return [
        EdgePath(path.labels + (c,)) for c in range(d_plus_one(graph)) if c != rep
    ]


def d_plus_one(graph):
    return graph.d + 1


def root_paths(graph):
    """The d+1 minimal paths, i.e. the children of the path-tree root."""
    return [EdgePath((c,)) for c in range(d_plus_one(graph))]


def _default_group(graph):
    generators = []
    degree = graph.d + 1
    for block in graph.orbit_colours:
        if len(block) >= 2:
            generators.append(from_cycles([tuple(block[:2])], degree))
        if len(block) >= 3:
            generators.append(from_cycles([tuple(block)], degree))
    if not generators:
        return ColourGroup([from_cycles([], degree)])
    return closure_enumerate(generators, degree)


class Omega:
    """The order isomorphism between the path tree and the coloured tree.

    Built letterwise: the first label is itself the first address letter,
    and afterwards a label c at a vertex x is sent to the child
    f_{col(x)}^{-1}(c), where f_chi is the canonical transport of chi to
    its orbit representative.  This is the unique root-preserving,
    plane-order-preserving tree isomorphism, and the colour of the image
    always lies in the terminal orbit of the path.
    """

    def __init__(self, graph, group=None):
        if group is None:
            group = _default_group(graph)
        expected = tuple(tuple(orbit) for orbit in group.orbits)
        if expected != graph.orbit_colours:
            raise ValueError(
                "group orbits %r do not match graph colours %r"
                % (expected, graph.orbit_colours)
            )
        self.graph = graph
        self.group = group
        self.plane = plane_for(group)
        self._orbit_of, self._rep_of = _orbit_lookup(graph)

    def to_address(self, path):
        check_path(path, self.graph)
        word = []
        for k, label in enumerate(path.labels):
            if k == 0:
                word.append(label)
            else:
                f = self.plane.canonical_maps[word[-1]]
                word.append(f.inverse()(label))
        address = tuple(word)
        assert self._orbit_of[address[-1]] == self._orbit_of[path.labels[-1]]
        return address

    def to_labels(self, address):
        labels = []
        for k, letter in enumerate(address):
            if k == 0:
                labels.append(letter)
            else:
                f = self.plane.canonical_maps[address[k - 1]]
                labels.append(f(letter))
        path = EdgePath(tuple(labels))
        check_path(path, self.graph)
        return path

    def check_depth(self, depth):
        """Exhaustively verify the isomorphism on all paths of <= depth labels.

        Checks bijectivity level by level, the orbit-membership property
        col(omega(path)) in t(path), and that ascending label order maps to
        the plane order on children.
        """
        level = root_paths(self.graph)
        for _ in range(depth):
            addresses = [self.to_address(p) for p in level]
            assert len(set(addresses)) == len(addresses)
            for path, address in zip(level, addresses):
                assert self.to_labels(address) == path
                assert (
                    self._orbit_of[address[-1]]
                    == self._orbit_of[path.labels[-1]]
                )
            parents = {}
            for path, address in zip(level, addresses):
                parents.setdefault(path.labels[:-1], []).append((path, address))
            for _, pairs in parents.items():
                pairs.sort(key=lambda item: item[0].labels)
                got = [address for _, address in pairs]
                prefix = got[0][:-1]
                if prefix == ():
                    want = [(c,) for c in range(self.graph.d + 1)]
                else:
                    parent = prefix
                    want = self.plane.children(parent)
                assert got == [tuple(w) for w in want]
            level = [
                child for path in level for child in path_children(path, self.graph)
            ]
        return True


def build_omega(graph, group=None):
    return Omega(graph, group)


@dataclass(frozen=True)
class Bisection:
    """Shift-side normal form: (source path, offset, target path) triples.

    The source paths and the target paths each give a clopen partition of
    the path space, the offset of a pair is the difference of the edge
    lengths of its paths, and source and target of a pair end at the same
    orbit vertex.  Pairs are kept sorted by source label word.
    """

    pairs: tuple

    def __post_init__(self):
        canonical = tuple(
            sorted(
                (EdgePath(s.labels), int(offset), EdgePath(t.labels))
                for s, offset, t in self.pairs
            )
        )
        object.__setattr__(self, "pairs", canonical)

    def sources(self):
        return [s for s, _, _ in self.pairs]

    def targets(self):
        return [t for _, _, t in self.pairs]


@dataclass
class ValidationReport:
    ok: bool
    problems: list = field(default_factory=list)


def _partition_problems(paths, graph, side):
    problems = []
    for i, p in enumerate(paths):
        for j in range(i + 1, len(paths)):
            q = paths[j]
            if p.is_prefix_of(q) or q.is_prefix_of(p):
                problems.append(
                    "%s paths %r and %r overlap (one is a prefix of the other)"
                    % (side, p.labels, q.labels)
                )
    mass = sum((cylinder_mass(p, graph) for p in paths), Fraction(0))
    if mass != 1:
        problems.append(
            "%s cylinders cover mass %s instead of 1" % (side, mass)
        )
    return problems


def validate_bisection(bisection, graph):
    """Structured diagnostics; never raises on mathematically bad data."""
    problems = []
    for index, (source, offset, target) in enumerate(bisection.pairs):
        for path in (source, target):
            try:
                check_path(path, graph)
            except PathError as exc:
                problems.append("pair %d: %s" % (index, exc))
        if problems:
            continue
        if terminal_orbit(source, graph) != terminal_orbit(target, graph):
            problems.append(
                "pair %d: source ends at orbit vertex %d but target at %d"
                % (
                    index,
                    terminal_orbit(source, graph),
                    terminal_orbit(target, graph),
                )
            )
        want = edge_length(source, graph) - edge_length(target, graph)
        if offset != want:
            problems.append(
                "pair %d: offset %d does not match edge length difference %d"
                % (index, offset, want)
            )
    if not problems:
        problems.extend(_partition_problems(bisection.sources(), graph, "source"))
        problems.extend(_partition_problems(bisection.targets(), graph, "target"))
    return ValidationReport(ok=not problems, problems=problems)


def _make_pair(source, target, graph):
    return (
        source,
        edge_length(source, graph) - edge_length(target, graph),
        target,
    )


def identity_bisection(graph):
    return Bisection(tuple(_make_pair(p, p, graph) for p in root_paths(graph)))


def bisection_to_element(bisection, omega):
    report = validate_bisection(bisection, omega.graph)
    if not report.ok:
        raise InvalidBisection(report)
    domain = [omega.to_address(s) for s in bisection.sources()]
    range_ = [omega.to_address(t) for _, _, t in bisection.pairs]
    mapping = dict(zip(domain, range_))
    return make_element(domain, range_, mapping, omega.group)


def element_to_bisection(element, omega=None):
    if omega is None:
        omega = Omega(sft_graph_for_group(element.group), element.group)
    element = element.reduce()
    pairs = []
    for leaf in element.domain.leaves:
        source = omega.to_labels(leaf)
        target = omega.to_labels(element.leaf_image(leaf))
        pairs.append(_make_pair(source, target, omega.graph))
    return Bisection(tuple(pairs))


def compose_bisections(first, second, graph):
    """The bisection acting as `first after second` on the path space.

    A pair (s, t) acts on cylinders by replacing the prefix s with t and
    keeping the remaining labels; the terminal-vertex condition is exactly
    what makes the remaining labels legal after either prefix.
    """
    pairs = []
    for s2, _, t2 in second.pairs:
        for s1, _, t1 in first.pairs:
            if s1.is_prefix_of(t2):
                extra = t2.labels[len(s1.labels):]
                pairs.append(
                    _make_pair(s2, EdgePath(t1.labels + extra), graph)
                )
            elif t2.is_prefix_of(s1) and s1 != t2:
                extra = s1.labels[len(t2.labels):]
                pairs.append(
                    _make_pair(EdgePath(s2.labels + extra), t1, graph)
                )
    result = Bisection(tuple(pairs))
    report = validate_bisection(result, graph)
    assert report.ok, report.problems
    return result


def random_bisection(omega, rng=None, expansions=6):
    rng = rng if rng is not None else random.Random()
    return element_to_bisection(random_element(omega.group, rng, expansions), omega)


def bisection_to_jsonable(bisection):
    return [
        [list(s.labels), offset, list(t.labels)]
        for s, offset, t in bisection.pairs
    ]


def bisection_from_jsonable(data):
    pairs = []
    for item in data:
        if not (isinstance(item, (list, tuple)) and len(item) == 3):
            raise ValueError("bisection entries must be [source, offset, target]")
        source, offset, target = item
        pairs.append((EdgePath(tuple(source)), int(offset), EdgePath(tuple(target))))
    return Bisection(tuple(pairs))
