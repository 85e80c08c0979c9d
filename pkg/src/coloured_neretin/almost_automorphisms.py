"""Exact arithmetic in V_F: tree-pair elements and their group operations.

An element is a pair of finite complete subtrees (domain, range) together
with a leaf bijection kappa matching colours orbit by orbit; below the
leaves it acts as the unique order-preserving extension determined by the
plane order.  Elements form a group under composition of the boundary
actions; each equivalence class has a unique reduced representative
(no contractible cherry), which is the canonical form used throughout.

The module also houses the sign homomorphisms: the parity of the leaf
permutation restricted to the leaves coloured in an invariant subset D',
together with the exact criteria for when that parity descends to the
group (and to the bigger closure containing non-order-preserving
elements), and the translation elements used to produce purely infinite
dynamics witnesses on clopen subsets of the boundary.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .permutations import NotInvariant, cycle_string, parse_cycles
from .tree import (
    CompleteSubtree,
    IncompleteTree,
    admissible_child_colours,
    check_address,
    is_prefix,
    plane_for,
)

__all__ = [
    "SizeMismatch",
    "OrbitViolation",
    "NotWellDefined",
    "PrefixTooShort",
    "IncompleteTree",
    "NotInvariant",
    "SignValue",
    "TreePairElement",
    "make_element",
    "identity_element",
    "compose",
    "inverse",
    "sign",
    "is_sign_well_defined",
    "find_sign_violation",
    "element_from_local_data",
    "translation_element",
    "purely_infinite_witness",
    "random_element",
    "element_to_dict",
    "element_from_dict",
]


class SizeMismatch(ValueError):
    """Domain and range leaf sets have different cardinalities."""


class OrbitViolation(ValueError):
    """kappa maps some leaf to a leaf whose colour lies in a different orbit."""


class NotWellDefined(ValueError):
    """The requested class-level sign depends on the representative."""


class PrefixTooShort(ValueError):
    """The word does not reach past a domain leaf.

    ``needed_depth`` is the smallest length sufficient for every extension
    of the offending word.
    """

    def __init__(self, message, needed_depth):
        super().__init__(message)
        self.needed_depth = needed_depth


@dataclass(frozen=True)
class SignValue:
    value: int
    subset: tuple

    def __post_init__(self):
        assert self.value in (1, -1)


def _same_group(g1, g2):
    return g1 is g2 or (g1.degree == g2.degree and g1._element_set == g2._element_set)


class TreePairElement:
    """(domain tree, range tree, leaf bijection), not necessarily reduced.

    ``kappa[i]`` is the index (into ``range_tree.leaves``) of the image of
    ``domain.leaves[i]``.  Construction validates sizes, bijectivity and the
    orbit condition; use :func:`make_element` to also reduce.
    """

    __slots__ = ("group", "plane", "domain", "range", "kappa", "_map")

    def __init__(self, group, domain, range_, kappa):
        if domain.d != group.d or range_.d != group.d:
            raise ValueError("tree arity does not match the colour group degree")
        if len(domain) != len(range_):
            raise SizeMismatch(
                "domain has %d leaves, range has %d" % (len(domain), len(range_))
            )
        kappa = tuple(kappa)
        if len(kappa) != len(domain):
            raise ValueError("kappa has %d entries, expected %d" % (len(kappa), len(domain)))
        seen = {}
        for i, k in enumerate(kappa):
            if not 0 <= k < len(range_.leaves):
                raise ValueError("kappa index %d out of range" % k)
            if k in seen:
                raise ValueError(
                    "kappa is not a bijection: index %d hit by leaves %d and %d"
                    % (k, seen[k], i)
                )
            seen[k] = i
        for i, leaf in enumerate(domain.leaves):
            image = range_.leaves[kappa[i]]
            if group.orbit_of[leaf[-1]] != group.orbit_of[image[-1]]:
                raise OrbitViolation(
                    "leaf %r (colour %d) maps to %r (colour %d) across orbits"
                    % (leaf, leaf[-1], image, image[-1])
                )
        self.group = group
        self.plane = plane_for(group)
        self.domain = domain
        self.range = range_
        self.kappa = kappa
        self._map = {
            leaf: range_.leaves[kappa[i]] for i, leaf in enumerate(domain.leaves)
        }

    # -- basic protocol ----------------------------------------------------

    def leaf_image(self, leaf):
        return self._map[tuple(leaf)]

    def __eq__(self, other):
        return (
            isinstance(other, TreePairElement)
            and _same_group(self.group, other.group)
            and self.domain == other.domain
            and self.range == other.range
            and self.kappa == other.kappa
        )

    def __hash__(self):
        return hash((self.domain, self.range, self.kappa))

    def __repr__(self):
        return "TreePairElement(%d leaves, d=%d)" % (len(self.domain), self.group.d)

    def is_identity(self):
        reduced = self.reduce()
        return len(reduced.domain) == self.group.d + 1 and all(
            reduced.domain.leaves[i] == reduced.range.leaves[reduced.kappa[i]]
            for i in range(len(reduced.domain))
        )

    # -- expansion and reduction -------------------------------------------

    def expand_at(self, leaf):
        """Equivalent element with the domain expanded at ``leaf`` (and the
        range at its image); new children matched positionally in plane order."""
        leaf = tuple(leaf)
        if leaf not in self.domain:
            raise ValueError("leaf %r not in the domain tree" % (leaf,))
        image = self._map[leaf]
        new_domain = self.domain.expand(leaf)
        new_range = self.range.expand(image)
        pairs = {v: w for v, w in self._map.items() if v != leaf}
        for child, image_child in zip(self.plane.children(leaf), self.plane.children(image)):
            pairs[child] = image_child
        kappa = [new_range.leaf_index(pairs[v]) for v in new_domain.leaves]
        return TreePairElement(self.group, new_domain, new_range, kappa)

    def _find_cherry(self):
        """Lex-least contractible cherry (u, u') or None.

        A cherry is an internal nonroot vertex u of the domain all of whose
        children are leaves mapped, in plane order, exactly onto the
        plane-ordered children of a single vertex u' of the range.
        """
        by_parent = {}
        for leaf in self.domain.leaves:
            if len(leaf) >= 2:
                by_parent.setdefault(leaf[:-1], []).append(leaf)
        candidates = [u for u, chl in by_parent.items() if len(chl) == self.group.d]
        for u in self.plane.lex_sorted(candidates):
            children = self.plane.children(u)
            if any(c not in self._map for c in children):
                continue
            images = [self._map[c] for c in children]
            parent = images[0][:-1]
            if any(len(img) < len(parent) + 1 or img[:-1] != parent for img in images):
                continue
            if images == self.plane.children(parent):
                return u, parent
        return None

    def _contract(self, u, u_image):
        children = set(self.plane.children(u))
        new_domain = self.domain.contract(u)
        new_range = self.range.contract(u_image)
        pairs = {v: w for v, w in self._map.items() if v not in children}
        pairs[u] = u_image
        kappa = [new_range.leaf_index(pairs[v]) for v in new_domain.leaves]
        return TreePairElement(self.group, new_domain, new_range, kappa)

    def reduce(self):
        """The canonical minimal representative (exhaustive cherry contraction)."""
        current = self
        while True:
            cherry = current._find_cherry()
            if cherry is None:
                return current
            current = current._contract(*cherry)

    def is_reduced(self):
        return self._find_cherry() is None

    def refine_domain_to(self, leaves):
        """Expand until every address in ``leaves`` is a domain leaf (the
        given set must refine the current domain)."""
        current = self
        target = set(tuple(w) for w in leaves)
        while True:
            for v in current.domain.leaves:
                if v not in target and any(is_prefix(v, w) for w in target):
                    current = current.expand_at(v)
                    break
            else:
                return current

    def refine_range_to(self, leaves):
        current = self
        target = set(tuple(w) for w in leaves)
        while True:
            for w in current.range.leaves:
                if w not in target and any(is_prefix(w, t) for t in target):
                    i = current.kappa.index(current.range.leaf_index(w))
                    current = current.expand_at(current.domain.leaves[i])
                    break
            else:
                return current

    # -- group operations ----------------------------------------------------

    def inverse(self):
        inv = [0] * len(self.kappa)
        for i, k in enumerate(self.kappa):
            inv[k] = i
        return TreePairElement(self.group, self.range, self.domain, inv).reduce()

    def compose(self, other):
        """self after other (``(self*other)(x) = self(other(x))``)."""
        return compose(self, other)

    def __mul__(self, other):
        return compose(self, other)

    # -- boundary action -----------------------------------------------------

    def apply_to_prefix(self, word):
        """Image of a cylinder prefix: range leaf plus order-preserving
        transport of the tail.  The word must extend some domain leaf."""
        word = check_address(word, self.group.d)
        leaf = self.domain.leaf_containing(word)
        if leaf is None:
            needed = max(len(v) for v in self.domain.leaves if is_prefix(word, v))
            raise PrefixTooShort(
                "%r stops short of the domain leaves; depth %d always suffices"
                % (word, needed),
                needed,
            )
        image = self._map[leaf]
        tail = word[len(leaf):]
        return image + self.plane.transport_tail(leaf[-1], image[-1], tail)


def make_element(domain_leaves, range_leaves, bijection, group):
    """Validated, reduced element from leaf lists and a bijection.

    ``bijection`` is either a dict mapping domain addresses to range
    addresses, or a list of integers sending the i-th given domain leaf to
    the bijection[i]-th given range leaf.
    """
    domain_leaves = [tuple(w) for w in domain_leaves]
    range_leaves = [tuple(w) for w in range_leaves]
    domain = CompleteSubtree(group.d, domain_leaves)
    range_ = CompleteSubtree(group.d, range_leaves)
    if len(domain) != len(range_):
        raise SizeMismatch(
            "domain has %d leaves, range has %d" % (len(domain), len(range_))
        )
    if isinstance(bijection, dict):
        pair_map = {tuple(v): tuple(w) for v, w in bijection.items()}
    else:
        bijection = list(bijection)
        if sorted(bijection) != list(range(len(range_leaves))):
            dup = next(k for k in bijection if bijection.count(k) > 1)
            raise ValueError("kappa is not a bijection: duplicate index %d" % dup)
        pair_map = {v: range_leaves[k] for v, k in zip(domain_leaves, bijection)}
    if set(pair_map) != set(domain.leaves):
        raise ValueError("bijection does not cover the domain leaves exactly")
    kappa = [range_.leaf_index(pair_map[v]) for v in domain.leaves]
    return TreePairElement(group, domain, range_, kappa).reduce()


def identity_element(group):
    ball = CompleteSubtree.ball(group.d, 1)
    return TreePairElement(group, ball, ball, range(len(ball)))


def compose(a, b):
    """The element acting as a after b on the boundary."""
    if not _same_group(a.group, b.group):
        raise ValueError("parameter mismatch: elements live over different colour groups")
    middle = set()
    for t in b.range.leaves:
        for s in a.domain.leaves:
            if is_prefix(t, s):
                middle.add(s)
            elif is_prefix(s, t):
                middle.add(t)
    bb = b.refine_range_to(middle)
    aa = a.refine_domain_to(middle)
    assert bb.range.leaves == aa.domain.leaves
    kappa = []
    for i in range(len(bb.domain)):
        mid = bb.range.leaves[bb.kappa[i]]
        kappa.append(aa.kappa[aa.domain.leaf_index(mid)])
    return TreePairElement(a.group, bb.domain, aa.range, kappa).reduce()


def inverse(e):
    return e.inverse()


def apply_to_prefix(e, word):
    return e.apply_to_prefix(word)


def expand_at(e, leaf):
    return e.expand_at(leaf)


def reduce(e):
    return e.reduce()


# -- signs -------------------------------------------------------------------


def _check_invariant_subset(group, subset):
    subset = tuple(sorted(set(subset)))
    for c in subset:
        if not 0 <= c <= group.d:
            raise ValueError("colour %d outside 0..%d" % (c, group.d))
    if not group.is_invariant(subset):
        raise NotInvariant("subset %s is not invariant under the colour group" % (list(subset),))
    return subset

def is_sign_well_defined(group, subset, target="vf"):
    """Whether the parity of the leaf permutation on subset-coloured leaves
    is representative-independent.

    target "vf": invariance of the subset and even cardinality.
    target "nf": additionally, for every colour chi, the stabilizer of chi
    must restrict to even permutations of the subset (this is what extends
    the homomorphism past the locally order-preserving elements).
    """
    target = target.lower().replace("_", "")
    if target not in ("vf", "nf"):
        raise ValueError("target must be 'vf' or 'nf'")
    subset = tuple(sorted(set(subset)))
    if any(not 0 <= c <= group.d for c in subset):
        raise ValueError("subset contains colours outside 0..%d" % group.d)
    if not group.is_invariant(subset):
        return False
    if len(subset) % 2:
        return False
    if target == "nf":
        from .permutations import stabilizer_restriction_in_alt

        return all(
            stabilizer_restriction_in_alt(group, chi, subset)
            for chi in range(group.degree)
        )
    return True


def sign(e, subset, mode="class", target="vf"):
    """Sign of the leaf permutation restricted to subset-coloured leaves.

    honest mode: the parity for the element's own trees, via inversion
    counting against the lexicographic order (the k-th subset-coloured range
    leaf is identified with the k-th subset-coloured domain leaf).

    class mode: refuses representative-dependent data (NotWellDefined) and
    otherwise returns the homomorphism value, computed on the reduced form.
    """
    if mode not in ("honest", "class"):
        raise ValueError("mode must be 'honest' or 'class'")
    subset = _check_invariant_subset(e.group, subset)
    if mode == "class":
        if not is_sign_well_defined(e.group, subset, target):
            raise NotWellDefined(
                "sign on %s is representative-dependent for this colour group"
                % (list(subset),)
            )
        e = e.reduce()
    plane = e.plane
    dom = [v for v in plane.lex_sorted(e.domain.leaves) if v[-1] in subset]
    ran = [w for w in plane.lex_sorted(e.range.leaves) if w[-1] in subset]
    assert len(dom) == len(ran)
    position = {w: k for k, w in enumerate(ran)}
    seq = [position[e.leaf_image(v)] for v in dom]
    inversions = sum(
        1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j]
    )
    return SignValue(-1 if inversions % 2 else 1, subset)


def find_sign_violation(group, subset):
    """An explicit (element, expanded element) pair with different honest
    signs, for an invariant subset of odd cardinality.

    Construction: swap two leaves of B_2 coloured chi in the subset, then
    expand at both swapped leaves; the swap contributes a transposition, the
    expansion replaces it by |subset|-1 transpositions of matched children.
    """
    subset = _check_invariant_subset(group, subset)
    if not subset or len(subset) % 2 == 0:
        raise ValueError("violations exist exactly for odd nonempty invariant subsets")
    chi = subset[0]
    others = [a for a in range(group.d + 1) if a != chi]
    v1 = (others[0], chi)
    v2 = (others[1], chi)
    ball = CompleteSubtree.ball(group.d, 2)
    kappa = list(range(len(ball)))
    i1, i2 = ball.leaf_index(v1), ball.leaf_index(v2)
    kappa[i1], kappa[i2] = kappa[i2], kappa[i1]
    element = TreePairElement(group, ball, ball, kappa)
    expanded = element.expand_at(v1).expand_at(v2)
    assert sign(element, subset, mode="honest").value != sign(
        expanded, subset, mode="honest"
    ).value
    return element, expanded


# -- constructors from other data ---------------------------------------------


def element_from_local_data(group, local):
    """The element acting with the given local colour permutations at
    finitely many vertices and by canonical order-preserving transport
    everywhere else.

    ``local`` maps vertex addresses to permutations in the colour group.
    Data at a nonroot vertex v must be consistent: it has to send col(v) to
    the colour of v's image, which is determined by the data above v.
    """
    plane = plane_for(group)
    d = group.d
    normalized = {}
    for v, p in local.items():
        v = check_address(v, d)
        if isinstance(p, str):
            p = parse_cycles(p, group.degree)
        if p not in group:
            raise ValueError(
                "local permutation %s at %r is not in the colour group" % (p, v)
            )
        normalized[v] = p

    def image_of(word):
        img = ()
        for k, c in enumerate(word):
            prefix = word[:k]
            if prefix in normalized:
                p = normalized[prefix]
            elif k == 0:
                p = group.identity()
            else:
                p = plane.transport(prefix[-1], img[-1])
            img = img + (p(c),)
        return img

    for v, p in normalized.items():
        if v:
            image = image_of(v)
            if p(v[-1]) != image[-1]:
                raise ValueError(
                    "inconsistent local data at %r: %s should send colour %d to %d"
                    % (v, p, v[-1], image[-1])
                )

    depth = max((len(v) for v in normalized), default=0) + 1
    domain = CompleteSubtree.ball(d, depth)
    pairs = {leaf: image_of(leaf) for leaf in domain.leaves}
    return make_element(domain.leaves, sorted(pairs.values()), pairs, group)


def _free_reduce(left, right):
    """Concatenate two no-repeat words with cancellation of equal adjacent
    letters (each letter is an involution)."""
    stack = list(left)
    for c in right:
        if stack and stack[-1] == c:
            stack.pop()
        else:
            stack.append(c)
    return tuple(stack)


def translation_element(group, word):
    """The element translating boundary addresses by ``word`` on the left.

    Addresses are words in the free product of d+1 involutions (one per
    colour); left multiplication by a fixed reduced word, with free
    reduction, is a homeomorphism of the boundary that preserves every tail
    letterwise, hence defines an element over any colour group.
    """
    word = check_address(word, group.d)
    if not word:
        return identity_element(group)
    cancel_ray = tuple(reversed(word))
    leaves = []
    for t in range(len(cancel_ray)):
        prefix = cancel_ray[:t]
        for c in admissible_child_colours(prefix, group.d):
            if c != cancel_ray[t]:
                leaves.append(prefix + (c,))
    leaves.extend(
        cancel_ray + (c,) for c in admissible_child_colours(cancel_ray, group.d)
    )
    pairs = {u: _free_reduce(word, u) for u in leaves}
    return make_element(leaves, sorted(pairs.values()), pairs, group)


def purely_infinite_witness(group, cylinders):
    """Two elements g, h with g(U) and h(U) disjoint and both inside U,
    for U a proper nonempty clopen union of the given disjoint cylinders.

    Both are translations: pick a vertex v with cylinder disjoint from U and
    two incomparable vertices w1, w2 inside U whose colours differ from
    col(v); left multiplication by w_i v^{-1} maps the complement of the
    v-cylinder into the w_i-cylinder (after the v-prefix cancels, the first
    surviving letter is col(v), which cannot cancel into w_i).
    """
    d = group.d
    cyls = [check_address(u, d) for u in cylinders]
    if not cyls:
        raise ValueError("U is empty")
    for i in range(len(cyls)):
        for j in range(i + 1, len(cyls)):
            if is_prefix(cyls[i], cyls[j]) or is_prefix(cyls[j], cyls[i]):
                raise ValueError(
                    "cylinders %r and %r overlap" % (cyls[i], cyls[j])
                )
    mass = Fraction(0)
    for u in cyls:
        mass += Fraction(1) if not u else Fraction(1, (d + 1) * d ** (len(u) - 1))
    if mass == 1:
        raise ValueError("U is the whole boundary")
    assert mass < 1

    outside = None
    queue = deque([()])
    while queue and outside is None:
        u = queue.popleft()
        for c in admissible_child_colours(u, d):
            child = u + (c,)
            if any(is_prefix(cyl, child) for cyl in cyls):
                continue
            if any(is_prefix(child, cyl) for cyl in cyls):
                queue.append(child)
                continue
            outside = child
            break
    assert outside is not None, "a proper clopen set misses some cylinder"

    anchor = min(cyls)
    first_two = admissible_child_colours(anchor, d)[:2]
    targets = []
    for a in first_two:
        x = anchor + (a,)
        if a != outside[-1]:
            targets.append(x)
        else:
            y = min(c for c in range(d + 1) if c != a)
            targets.append(x + (y,))
    back = tuple(reversed(outside))
    g = translation_element(group, _free_reduce(targets[0], back))
    h = translation_element(group, _free_reduce(targets[1], back))
    return g, h


# -- random elements -----------------------------------------------------------


def random_element(group, rng, expansions=6):
    """Random reduced element: domain and range grow by lockstep expansions
    at same-orbit leaves, so an orbit-respecting leaf bijection always
    exists; within each orbit class the matching is shuffled."""
    plane = plane_for(group)
    d = group.d

    def orbit_matching(src_colours, dst_colours):
        match = {}
        for orbit in group.orbits:
            src = [c for c in src_colours if c in orbit]
            dst = [c for c in dst_colours if c in orbit]
            assert len(src) == len(dst)
            rng.shuffle(dst)
            match.update(zip(src, dst))
        return match

    base = orbit_matching(list(range(d + 1)), list(range(d + 1)))
    pairs = [((c,), (base[c],)) for c in range(d + 1)]
    for _ in range(expansions):
        v, w = pairs.pop(rng.randrange(len(pairs)))
        match = orbit_matching(
            admissible_child_colours(v, d), admissible_child_colours(w, d)
        )
        pairs.extend((v + (a,), w + (b,)) for a, b in match.items())
    rng.shuffle(pairs)
    domain_leaves = [v for v, _ in pairs]
    return make_element(
        domain_leaves, sorted(w for _, w in pairs), dict(pairs), group
    )


# -- serialization ---------------------------------------------------------------


def element_to_dict(e):
    """JSON-ready dict; elements are always written in reduced form."""
    e = e.reduce()
    return {
        "d": e.group.d,
        "F_generators": [cycle_string(g) for g in e.group.generators],
        "domain": [list(v) for v in e.domain.leaves],
        "range": [list(w) for w in e.range.leaves],
        "kappa": list(e.kappa),
    }


def element_from_dict(data, group=None):
    """Inverse of element_to_dict; a pre-built group overrides the generator
    field (callers must then ensure it matches)."""
    for field in ("d", "domain", "range", "kappa"):
        if field not in data:
            raise ValueError("element file is missing the %r field" % field)
    d = data["d"]
    if not isinstance(d, int) or d < 2:
        raise ValueError("d must be an integer >= 2")
    if group is None:
        from .permutations import closure_enumerate

        generators = [
            parse_cycles(text, d + 1) for text in data.get("F_generators", [])
        ]
        group = closure_enumerate(generators, d + 1)
    domain = [tuple(v) for v in data["domain"]]
    range_ = [tuple(w) for w in data["range"]]
    return make_element(domain, range_, list(data["kappa"]), group)
