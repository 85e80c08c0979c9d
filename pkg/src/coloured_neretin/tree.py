"""The coloured rooted (d+1)-regular tree.

Vertices are addresses: tuples of colours with no two consecutive letters
equal (an edge never repeats the colour of the parent edge).  The empty
tuple is the root.  A nonroot vertex is coloured by its last letter.

A ``PlaneOrder`` fixes, for a colour group F, the canonical planar embedding:
children of the root are ordered by colour, children of a vertex coloured
chi are ordered by the image of their colour under a canonical map
f_chi in F taking chi to its orbit representative.  The induced total
order on vertices ("descendants first, then branch order") is what every
canonical form in the library hangs off.
"""

from __future__ import annotations

import weakref
from functools import cmp_to_key


class IncompleteTree(ValueError):
    """A leaf set that is not the leaf set of a finite complete subtree."""


def is_valid_address(word, d):
    """No-repeat colour word over {0..d}."""
    word = tuple(word)
    for i, c in enumerate(word):
        if not 0 <= c <= d:
            return False
        if i > 0 and word[i - 1] == c:
            return False
    return True


def check_address(word, d):
    word = tuple(word)
    if not is_valid_address(word, d):
        raise ValueError("invalid vertex address %r for d=%d" % (word, d))
    return word


def colour_of(v):
    """Colour of a nonroot vertex (the root has no colour)."""
    if not v:
        raise ValueError("the root carries no colour")
    return v[-1]


def admissible_child_colours(v, d):
    """Colours available on edges below v: everything except col(v)."""
    if not v:
        return list(range(d + 1))
    return [c for c in range(d + 1) if c != v[-1]]


def is_prefix(u, v):
    return len(u) <= len(v) and tuple(v[: len(u)]) == tuple(u)


def sphere(d, n):
    """All 'No-repeat' words of length n, in plain tuple order ((d+1)d^(n-1) of them)."""
    if n == 0:
        return [()]
    words = [(c,) for c in range(d + 1)]
    for _ in range(n - 1):
        words = [w + (c,) for w in words for c in range(d + 1) if c != w[-1]]
    return words


class PlaneOrder:
    """Canonical planar embedding of the coloured tree for a colour group F.

    orbit representatives: minimal colour of each orbit.
    canonical maps: f_chi = the first element of F (in image-tuple order)
    with f_chi(chi) = representative; the identity is first in that order,
    so f_chi = id whenever chi is itself a representative.
    """

    def __init__(self, group):
        self.group = group
        self.d = group.d
        self.orbit_reps = group.orbit_reps
        self.canonical_maps = {}
        for chi in range(group.degree):
            rep = group.orbit_reps[group.orbit_of[chi]]
            for f in group.elements:
                if f(chi) == rep:
                    self.canonical_maps[chi] = f
                    break
            else:  # pragma: no cover - orbits guarantee a match
                raise AssertionError("no canonical map for colour %d" % chi)

    def child_colour_order(self, v):
        """Colours of the children of v, in plane order."""
        if not v:
            return list(range(self.d + 1))
        f = self.canonical_maps[v[-1]]
        return sorted(admissible_child_colours(v, self.d), key=f)

    def children(self, v):
        v = tuple(v)
        return [v + (c,) for c in self.child_colour_order(v)]

    def transport(self, src_colour, dst_colour):
        """The colour map matching children of a src-coloured vertex with
        children of a dst-coloured vertex position by position.

        Equals f_dst^{-1} o f_src; requires the two colours to share an orbit
        (so both canonical maps land on the same representative).  Sends
        src_colour to dst_colour, hence admissible colours to admissible ones.
        """
        group = self.group
        if group.orbit_of[src_colour] != group.orbit_of[dst_colour]:
            raise ValueError(
                "colours %d and %d lie in different orbits" % (src_colour, dst_colour)
            )
        return self.canonical_maps[dst_colour].inverse() * self.canonical_maps[src_colour]

    def transport_tail(self, src_colour, dst_colour, tail):
        """Image of the relative address ``tail`` under the canonical
        order-preserving isomorphism from the subtree below a src-coloured
        vertex to the subtree below a dst-coloured vertex."""
        out = []
        a, b = src_colour, dst_colour
        for c in tail:
            c2 = self.transport(a, b)(c)
            out.append(c2)
            a, b = c, c2
        return tuple(out)

    def lex_compare(self, v, w):
        """-1 / 0 / +1: strict descendants come first; incomparable addresses
        branch by the plane order of the children of their common prefix."""
        v, w = tuple(v), tuple(w)
        if v == w:
            return 0
        if is_prefix(w, v):
            return -1
        if is_prefix(v, w):
            return 1
        k = 0
        while v[k] == w[k]:
            k += 1
        u = v[:k]
        a, b = v[k], w[k]
        if not u:
            return -1 if a < b else 1
        f = self.canonical_maps[u[-1]]
        return -1 if f(a) < f(b) else 1

    def lex_sorted(self, addresses):
        return sorted((tuple(v) for v in addresses), key=cmp_to_key(self.lex_compare))


class CompleteSubtree:
    """A finite complete subtree, encoded by its leaf set.

    Leaves are stored sorted in plain tuple order (deterministic and
    independent of any colour group); use PlaneOrder.lex_sorted for the
    planar order when it matters.
    """

    __slots__ = ("d", "leaves", "_index")

    def __init__(self, d, leaves):
        leaves = sorted(tuple(w) for w in leaves)
        _check_complete(leaves, d)
        self.d = d
        self.leaves = tuple(leaves)
        self._index = {w: i for i, w in enumerate(self.leaves)}

    @classmethod
    def ball(cls, d, n):
        """B_n: all addresses of length exactly n as leaves (n >= 1)."""
        if n < 1:
            raise ValueError("a complete subtree has depth at least 1")
        return cls(d, sphere(d, n))

    def __len__(self):
        return len(self.leaves)

    def __eq__(self, other):
        return (
            isinstance(other, CompleteSubtree)
            and self.d == other.d
            and self.leaves == other.leaves
        )

    def __hash__(self):
        return hash((self.d, self.leaves))

    def __contains__(self, leaf):
        return tuple(leaf) in self._index

    def leaf_index(self, leaf):
        return self._index[tuple(leaf)]

    def depth(self):
        return max(len(w) for w in self.leaves)

    def leaf_containing(self, word):
        """The unique leaf that is a prefix of ``word`` (which must be at
        least that deep), or None if ``word`` is a strict prefix of leaves."""
        word = tuple(word)
        for k in range(len(word) + 1):
            if word[:k] in self._index:
                return word[:k]
        return None

    def expand(self, leaf):
        """Simple expansion: replace ``leaf`` by its d children."""
        leaf = tuple(leaf)
        if leaf not in self._index:
            raise ValueError("leaf %r not in tree" % (leaf,))
        assert leaf, "the root is never a leaf of a complete subtree"
        new = [w for w in self.leaves if w != leaf]
        new.extend(leaf + (c,) for c in admissible_child_colours(leaf, self.d))
        return CompleteSubtree(self.d, new)

    def contract(self, parent):
        """Inverse of expand: all children of ``parent`` must be leaves."""
        parent = tuple(parent)
        children = [parent + (c,) for c in admissible_child_colours(parent, self.d)]
        if not all(c in self._index for c in children):
            raise ValueError("not all children of %r are leaves" % (parent,))
        new = [w for w in self.leaves if w not in set(children)]
        new.append(parent)
        return CompleteSubtree(self.d, new)

    def internal_vertices(self):
        """All strict prefixes of leaves (the non-leaf vertices), sorted."""
        seen = set()
        for w in self.leaves:
            for k in range(len(w)):
                seen.add(w[:k])
        return sorted(seen)

    def __repr__(self):
        return "CompleteSubtree(d=%d, %d leaves)" % (self.d, len(self.leaves))


def _check_complete(leaves, d):
    if not leaves:
        raise IncompleteTree("empty leaf set")
    if leaves == [()]:
        raise IncompleteTree("the bare root is not a complete subtree")
    for w in leaves:
        if not is_valid_address(w, d):
            raise IncompleteTree("invalid address %r for d=%d" % (w, d))
    if len(set(leaves)) != len(leaves):
        raise IncompleteTree("repeated leaf")
    _check_covering(None, leaves, d, ())


def _check_covering(parent_colour, suffixes, d, at):
    """suffixes: sorted relative addresses below a vertex of colour parent_colour."""
    if () in suffixes:
        if len(suffixes) != 1:
            raise IncompleteTree("leaf %r has descendants in the leaf set" % (at,))
        return
    by_first = {}
    for w in suffixes:
        by_first.setdefault(w[0], []).append(w[1:])
    admissible = set(range(d + 1)) if parent_colour is None else (
        set(range(d + 1)) - {parent_colour}
    )
    if set(by_first) != admissible:
        missing = sorted(admissible - set(by_first))
        raise IncompleteTree(
            "vertex %r is internal but covers no leaf through colours %s" % (at, missing)
        )
    for c, rest in by_first.items():
        _check_covering(c, rest, d, at + (c,))


def is_complete_leafset(leaves, d):
    """True iff ``leaves`` is prefix-free and covering (and not just the root)."""
    try:
        _check_complete(sorted(tuple(w) for w in leaves), d)
    except IncompleteTree:
        return False
    return True


def simple_expansion(tree, leaf):
    return tree.expand(leaf)


def random_complete_tree(d, rng, expansions):
    """Random complete subtree: B_1 followed by ``expansions`` random simple
    expansions (uniform leaf each time)."""
    t = CompleteSubtree.ball(d, 1)
    for _ in range(expansions):
        t = t.expand(t.leaves[rng.randrange(len(t.leaves))])
    return t


_PLANE_CACHE = weakref.WeakKeyDictionary()


def plane_for(group):
    """The PlaneOrder of a colour group, cached per group object."""
    try:
        return _PLANE_CACHE[group]
    except KeyError:
        plane = PlaneOrder(group)
        _PLANE_CACHE[group] = plane
        return plane
