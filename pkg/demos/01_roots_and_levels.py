"""Walk through the root-system layer: levels, shapes, central series.

Run with: python3 demos/01_roots_and_levels.py
"""

from frobkern.rootsys import (
    build_root_system,
    check_pairing_hypothesis,
    classify_root,
    context,
    gamma_roots,
    roots_of_level,
    summand_pairs,
)

print("=== positive roots of A3 ===")
sys_a3 = build_root_system("A", 3)
for beta in sys_a3.positive_roots:
    print(f"  {beta.label():12s} height {beta.height}")

print("\n=== levels relative to J = {a2} ===")
ctx = context("A", 3, {"a2"})
for beta in ctx.radical_roots():
    lc = classify_root(beta, ctx)
    print(f"  {beta.label():12s} level {lc.level}  shape {lc.shape.label()}")

print("\n=== the descending central series, level by level ===")
full = context("A", 3)
for v in range(1, full.max_level() + 1):
    stage = ", ".join(b.label() for b in gamma_roots(full, v))
    print(f"  stage {v}: {stage}")

print("\n=== two-term decompositions feeding the differentials ===")
for v in range(2, full.max_level() + 1):
    for beta in roots_of_level(full, v):
        pairs = summand_pairs(beta, full)
        pretty = ", ".join(f"({a.label()} | {b.label()})" for a, b in pairs)
        print(f"  {beta.label():12s} -> {pretty}")

print("\n=== the level-2 decomposition-count hypothesis ===")
for rank, J in [(3, set()), (4, set()), (4, {"a2", "a3"})]:
    ctx = context("A", rank, J)
    report = check_pairing_hypothesis(ctx, 3)
    tag = "holds" if report.ok else "FAILS"
    print(f"  A{rank}, J={sorted(J) or '{}'}: {tag}")
    for beta, count, ok in report.per_root:
        print(f"      {beta.label():16s} {count} decomposition(s)")
print("\nThe failing case is why the uniqueness search guards its precondition.")
