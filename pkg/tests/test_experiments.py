import random

from homlab.cycles import directed_cycle, divisor_transfer
from homlab.experiments import (
    census_sweep,
    com_ft_roundtrip,
    divisor_transfers,
    lauchli_roundtrip,
    pk_induction,
    pp_lift,
    random_cycle_coloring,
)
from homlab.filters import principal
from homlab.power import quotient_by_agreement, tolerant_power


def test_lauchli_roundtrip_counts():
    out = lauchli_roundtrip(3, 2)
    # 6 colorings per ultrafilter, 1 + 1 + 2 ultrafilters over the three filters
    assert out["colorings"] == 24
    assert out["roundtrips"] == 4


def test_com_ft_roundtrip():
    out = com_ft_roundtrip(120, seed=2)
    assert out["embedded"] > 0 and out["improper"] > 0


def test_pp_lift():
    assert pp_lift(1)["colorings"] == 10


def test_random_cycle_colorings_transfer():
    rng = random.Random(1)
    p = tolerant_power(directed_cycle(6), principal(2, [0, 1]))
    q = quotient_by_agreement(p)
    for _ in range(20):
        phi = random_cycle_coloring(q, rng)
        assert phi.is_valid()
        assert divisor_transfer(p, phi, 3, 2).is_valid()


def test_divisor_transfers_small():
    assert divisor_transfers(products=(4,), max_index=1, samples=5)["transfers"] > 0


def test_census_sweep():
    rows = census_sweep(3, 2)["census"]
    assert all(r["components"] == r["n"] ** (len(r["base"]) - 1) for r in rows)


def test_pk_induction_variants():
    for p, k, m, base in [(2, 1, 2, None), (3, 1, 2, None), (2, 2, 2, [0]), (2, 1, 3, [0, 2])]:
        out = pk_induction(p, k, m, base)
        n = p ** (k + 1)
        assert out["components"] == n ** (len(out["base"]) - 1)
        assert len(out["coloring"]) == (p ** (k + 1)) ** m
