"""Smoke test for the opq extension module.

Build and run from the repository root:

    cargo build -p opq-python --features extension-module --release
    cp target/release/libopq.so python/opq.so
    python3 python/smoke_test.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import opq  # noqa: E402


def main():
    p, q = 2, 2
    labels = opq.basis_labels(p, q)
    assert len(labels) == 6, labels

    # Homomorphism on a pair and the commutant of the sl2 triple.
    a, b = opq.pi("X+[1,2]", p, q), opq.pi("X-[1,1']", p, q)
    assert not a.commutator(b).is_zero()
    h, xp, xm = opq.sl2_triple(p, q)
    assert xp.commutator(xm) == h
    for lab in labels:
        assert opq.pi(lab, p, q).commutator(h).is_zero()
        assert opq.partial_fourier(opq.pi(lab, p, q)) == opq.pi_sharp(lab, p, q)

    # Casimir relation: (-(p+q)^2/4 + p+q) = 0 at (2,2), -3 at (3,3).
    diff = opq.casimir("g", 3, 3) - opq.casimir("sl2", 3, 3)
    assert diff.as_scalar() == "-3/1+0/1·i", diff.as_scalar()

    # Text round trip of an operator.
    assert opq.WeylOperator.from_text(a.to_text()) == a

    # Highest weight vector of weight m = 0 is killed by X+ and X-.
    v = opq.ModuleElement.highest_weight_vector(3, 3, 1, 1, 0)
    _, xp3, xm3 = opq.sl2_triple(3, 3)
    assert v.act(xp3).is_zero() and v.act(xm3).is_zero()

    assert opq.harmonic_dimension(3, 2) == opq.harmonic_kernel_rank(3, 2) == 5

    report = json.loads(opq.run_verify(p=2, q=2, suite="liealg"))
    assert report["summary"]["fail"] == 0, report["summary"]

    dim, bdeg, table = opq.gkdim(4, 4, 1)
    assert (dim, bdeg) == (5, "48")
    assert table.startswith("n,dim\n")
    assert opq.is_irreducible(4, 4, 1)
    assert opq.threshold(4, 4, 1) == 5
    assert "line kappa_plus-kappa_minus=0" in opq.ktypes(3, 3, 0, format="figure")

    agrees, text = opq.ladder(4, 4, 0, 0, 1, 2)
    assert agrees and "up-down j=2 constant 4" in text

    try:
        opq.pi("X-[1,1]", p, q)
    except ValueError:
        pass
    else:
        raise AssertionError("unprimed X- label accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
