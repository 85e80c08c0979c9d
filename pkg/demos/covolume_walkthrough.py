"""Walkthrough: ball automorphism counts and covolume-style comparisons.

Counting automorphisms of the depth-n coloured ball gives exact integers
that grow doubly exponentially.  Comparing them against the ambient
symmetric groups produces the index bounds used to rule out small discrete
cocompact subgroups; the dominant-coefficient inequality decides which
orbit shapes make the comparison go the right way.

Run:  python3 demos/covolume_walkthrough.py
"""

from coloured_neretin import (
    appendix_counts,
    ball_counts,
    covolume_chain,
    integer_partitions,
    verify_prime_windows,
    verify_smallest_inequality,
    verify_xi_claims,
)


def show(value, limit=40):
    text = str(value)
    if len(text) <= limit:
        return text
    return "%s... (%d digits)" % (text[:10], len(text))


def main():
    print("== exact ball counts for orbit sizes (1, 3, 2) ==")
    for n in range(1, 5):
        counts = ball_counts((1, 3, 2), n)
        print("  n=%d  sphere %-6d  |Aut(B_n)| = %s"
              % (n, counts.sphere, show(counts.aut_ball_order)))

    print()
    print("== index bound along a chain of balls ==")
    # a hypothetical discrete group meeting every sphere in 2 points
    for n in range(1, 4):
        chain = covolume_chain((1, 2), n, 2)
        print("  n=%d  index lower bound %s" % (n, chain.index_bound))

    print()
    print("== the dominant-coefficient trichotomy ==")
    for d in (2, 3, 4, 5):
        rows = []
        for parts in integer_partitions(d + 1):
            rows.append((parts, verify_smallest_inequality(parts).verdict))
        print("  d=%d: %s" % (d, ", ".join("%s %s" % r for r in rows)))
    print("  (strict 'holds' appears exactly when the number of orbits")
    print("   is small compared to d; single-switch shapes reverse it)")

    print()
    print("== interval-certified positivity of the growth functional ==")
    report = verify_xi_claims(12)
    print("  append steps checked: %d, merge steps: %d, tails: %d"
          % (report.append_checked, report.merge_checked, report.tail_checked))
    print("  all signs decided:", report.ok and not report.undecided)
    print("  boundary note:", report.boundary_note)

    print()
    print("== primes in (m/2, m] ==")
    primes = verify_prime_windows(100000)
    print("  least count for 17 <= m <= %d is %d (at m = %d)"
          % (primes.max_m, primes.least_count, primes.least_at))

    print()
    print("== the k-rooted variant and its printed bound ==")
    for n in (1, 2, 3):
        counts = appendix_counts(2, 2, n)
        print("  d=k=2, n=%d: recursion %s, extra-level form %s, bound %s"
              % (n, show(counts.aut_ball_order),
                 show(counts.overcount_value), show(counts.bound)))
    print("  the extra-level closed form always overshoots; the recursion")
    print("  value stays within the bound k! * d^(k d^(n-1))")


if __name__ == "__main__":
    main()
