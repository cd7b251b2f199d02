"""Smoke test for the circle_hall_py extension module.

Build and install first, e.g. `maturin build --release -m crates/python/Cargo.toml`
followed by `pip install target/wheels/*.whl`, then run `python3 python/smoke_test.py`.
"""

import json

import circle_hall_py as ch


def main():
    algebra = ch.HallAlgebra(2)
    left = ch.HallElement.basis(2, "0,1/2", 2)
    right = ch.HallElement.basis(2, "1/2,1", 2)
    product = algebra.product(left, right)
    assert not product.is_zero()
    assert ch.HallElement.from_json(product.to_json()) == product
    assert algebra.product(product, ch.HallElement.one(2, 2)) == product

    coproduct = algebra.coproduct(product)
    assert ch.TensorElement.from_json(coproduct.to_json()) == coproduct
    assert algebra.pairing(product, product) != "0"
    assert algebra.tensor_pairing(coproduct, coproduct) != "0"

    z = algebra.hubery("z", 1, 2)
    assert algebra.central_witness(z, [1, 1]) is None

    report = json.loads(algebra.verify("join", 3, "0,1/3", "1/3,2/3"))
    assert report["holds"] and len(report["certificates"]) == 2
    assert json.loads(algebra.mirror_compare(2))["passed"]

    try:
        ch.HallAlgebra(2, bound=2).product(ch.HallElement.basis(2, "0,1", 2), left)
    except ch.BoundExceededError:
        pass
    else:
        raise AssertionError("expected BoundExceededError")
    try:
        ch.HallAlgebra(6)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError for q = 6")

    line = ch.Curve(3)
    xi = line.series("xi", 1)
    assert xi[1] == "8/3", xi
    x = ch.ShuffleElement.rank_one(2, "x^0 v:1/2")
    y = ch.ShuffleElement.rank_one(2, "x^1 v:0")
    assert ch.Curve(2).shuffle_product(x, y).rank == 2
    elliptic = ch.Curve.elliptic(2, 1)
    assert elliptic.genus == 1
    assert elliptic.shuffle_product(ch.ShuffleElement.rank_one(2, "x^0 v:1", 2),
                                    ch.ShuffleElement.rank_one(2, "x^0 v:0", 2)).rank == 2

    normal = json.loads(ch.straighten_word("F[0,1/2) E[0,1/2)", 2, 2))
    assert normal["n"] == 2
    assert isinstance(json.loads(ch.fundrep_apply("E[0,1/2)", "1/2", 2)), list)
    assert json.loads(ch.embed("subdivision", 2))["affine_cartan"]
    assert ch.mirror_hom_ext("0,1/2", "1/2,1") == (0, 1)
    assert json.loads(ch.dtype_table("Y", "2/3", "1/3"))[0]["dims"]["0"] == 1
    assert ch.invariants(2, 1, [0]) == ("0", "0", "3", "-1/2")
    assert ch.invariants(2, 0, [1, 0])[1] is None

    print("circle_hall_py smoke test passed")


if __name__ == "__main__":
    main()
