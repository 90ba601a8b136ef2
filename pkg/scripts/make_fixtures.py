"""Regenerate the shipped fixture files from library constructions.

Every fixture is rebuilt from first principles and round-tripped through the
parser before it is written, so the files in fixtures/ always match the
current canonical serialization.
"""

import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from wdparity import linalg as la
from wdparity.datum import FormularyInput, LocalInput, parse_text, serialize
from wdparity.eps import HodgeTateData, PSTLocalDatum
from wdparity.numerology import (
    DeRhamNumerology,
    cyclotomic_rank_one,
    trivial_rank_one,
)
from wdparity.parity import AwayPlace, GlobalPointDatum, PAdicPlace
from wdparity.scalars import field
from wdparity.symplectic import (
    hyperbolic_pair,
    lagrangian_split,
    special_symplectic,
    validate_pairing,
)
from wdparity.wd import WDRep, make_unr


def build_fixtures():
    F12 = field(1, 2)
    zero, one = F12.zero(), F12.one()

    # weight-2 elliptic-curve-style local blocks over q = 2
    r2p, p2p = special_symplectic(F12, 2, 1)    # split multiplicative
    r2m, p2m = special_symplectic(F12, 2, -1)   # nonsplit multiplicative
    unit_root = F12.sqrt_q() / F12.from_rational(2)
    h, hp = hyperbolic_pair(make_unr(F12, unit_root))  # good ordinary

    ht = HodgeTateData([(-1, 1), (0, 1)])
    ht_plus = HodgeTateData([(-1, 1)])
    ht_minus = HodgeTateData([(0, 1)])

    def pst(rep, pairing):
        return PSTLocalDatum(
            delta=rep,
            ht=ht,
            split=lagrangian_split(pairing, ((zero, one),)),
            ht_plus=ht_plus,
            ht_minus=ht_minus,
        )

    datum_split = pst(r2p, p2p)
    datum_nonsplit = pst(r2m, p2m)
    datum_good = pst(h, hp)

    n_w2 = DeRhamNumerology(d=2, kdeg=1, ht=ht, h0=0, h0_dual=0,
                            h0_t=0, h0_dual_t=0)
    pl_split = PAdicPlace("p", datum_split, n_w2, n_w2.dual())
    pl_good = PAdicPlace("p", datum_good, n_w2, n_w2.dual())

    away_split = AwayPlace("11", r2p, p2p, True)
    away_nonsplit = AwayPlace("11", r2m, p2m, True)
    away_unr = AwayPlace("7", h, hp, False)

    # quadratic-character twist of the special block: the ramified local case
    g = tuple(tuple(-one if i == j else zero for j in range(2))
              for i in range(2))
    ram = WDRep(F12, r2p.frobenius, r2p.monodromy,
                (la.identity(F12, 2), g), 1)
    pram = validate_pairing(ram, p2p.gram)

    def global_datum(away, at_p):
        return GlobalPointDatum(degree=1, r2=0, dim=2,
                                away_places=away, p_places=at_p, h1f=1)

    return {
        "split_mult.datum": global_datum((away_split,), (pl_split,)),
        "nonsplit_mult.datum": global_datum((away_nonsplit,), (pl_good,)),
        "good_ordinary.datum": global_datum((away_unr,), (pl_good,)),
        "split_mult_local.datum": LocalInput("p", r2p, p2p, datum_split),
        "nonsplit_local.datum": LocalInput("p", r2m, p2m, datum_nonsplit),
        "ramified_local.datum": LocalInput("11", ram, pram),
        "qp.num": FormularyInput(trivial_rank_one(), trivial_rank_one().dual()),
        "qp1.num": FormularyInput(cyclotomic_rank_one(),
                                  cyclotomic_rank_one().dual()),
    }


def main():
    out_dir = ROOT / "fixtures"
    out_dir.mkdir(exist_ok=True)
    for name, obj in sorted(build_fixtures().items()):
        text = serialize(obj)
        if parse_text(text, where=name) != obj:
            raise SystemExit(f"{name}: round trip failed")
        (out_dir / name).write_text(text, encoding="utf-8")
        print(f"wrote fixtures/{name}")


if __name__ == "__main__":
    main()
