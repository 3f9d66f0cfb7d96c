import math
import random
from fractions import Fraction

import pytest

from gvexact.partitions import enumerate_partitions, parts_gcd
from gvexact.qalgebra import (
    NoSuchDecomposition,
    NotSymmetricInT,
    QLaurent,
    QRatio,
    RPoly,
    field_arith,
    format_qratio,
    pole_extract,
    qnum,
    qnum_product,
    t_k_in_t,
    t_k_qratio,
    to_t_poly,
    to_y_poly,
    try_to_t_poly,
)


def q(k):
    return QRatio(qnum(k))


def test_qnum_examples():
    assert qnum(0).is_zero()
    assert qnum(1) == QLaurent({1: Fraction(1), -1: Fraction(-1)})
    for k in range(1, 8):
        assert qnum(-k) == -qnum(k)


def test_qnum_product():
    assert qnum_product(()) == QLaurent.one()
    assert qnum_product((1, 1)) == qnum(1) * qnum(1)
    assert qnum_product((2, 1)) == qnum(2) * qnum(1)


def test_field_arith():
    inv1 = QRatio(QLaurent.one(), qnum(1))
    assert field_arith("add", inv1, -inv1).is_zero()
    assert field_arith("mul", q(2) / q(1), q(1) / q(2)) == QRatio.one()
    div = field_arith("div", q(6), q(2))
    # polynomial-division oracle: [6]/[2] = q^2 + 1 + q^-2
    expect = QLaurent({4: Fraction(1), 0: Fraction(1), -4: Fraction(1)})
    assert div == QRatio(expect)
    with pytest.raises(ZeroDivisionError):
        field_arith("div", q(1), QRatio.zero())


def test_reduction_normalization():
    f = QRatio(qnum(2) * qnum(3), qnum(3) * qnum(1))
    g = QRatio(qnum(2), qnum(1))
    assert f == g
    # denominator is a primitive integer polynomial, lowest exponent 0
    assert f.den.min_exp() == 0
    assert f.den.has_integer_coeffs()
    assert f.den.coeffs[f.den.max_exp()] > 0


def test_substitute_power_homomorphism():
    rng = random.Random(11)
    for _ in range(40):
        a = QRatio(qnum(rng.randint(1, 5)), qnum(rng.randint(1, 4)))
        b = QRatio(qnum(rng.randint(1, 6))) + QRatio.const(rng.randint(-2, 2))
        m = rng.randint(1, 4)
        assert (a + b).substitute_power(m) == a.substitute_power(m) + b.substitute_power(m)
        assert (a * b).substitute_power(m) == a.substitute_power(m) * b.substitute_power(m)
    for k in range(1, 6):
        for m in range(1, 5):
            assert QRatio(qnum(k)).substitute_power(m) == QRatio(qnum(k * m))
    inv1 = QRatio(QLaurent.one(), qnum(1))
    assert inv1.substitute_power(2) == QRatio(QLaurent.one(), qnum(2))


def test_to_t_poly_examples():
    qq = QRatio(QLaurent({2: Fraction(1), -2: Fraction(1)}))
    assert to_t_poly(qq) == RPoly([2, 1])
    f = (q(3) / q(1)) * (q(3) / q(1))
    assert to_t_poly(f) == RPoly([9, 6, 1])
    assert to_t_poly(QRatio.one()) == RPoly([1])
    with pytest.raises(NotSymmetricInT):
        to_t_poly(QRatio(qnum(1)))  # antisymmetric
    with pytest.raises(NotSymmetricInT):
        to_t_poly(QRatio(QLaurent.one(), qnum(1) * qnum(1)))  # genuine pole
    # half-integer symmetric input goes to y but not t
    half = QRatio(QLaurent({1: Fraction(1), -1: Fraction(1)}))
    with pytest.raises(NotSymmetricInT):
        to_t_poly(half)
    assert to_y_poly(half) == RPoly([2, 1])


def test_t_k_examples_and_round_trip():
    assert t_k_in_t(1) == RPoly([0, 1])
    assert t_k_in_t(2) == RPoly([0, 4, 1])
    assert t_k_in_t(3) == RPoly([0, 9, 6, 1])
    t = t_k_qratio(1)
    for k in range(1, 21):
        p = t_k_in_t(k)
        assert p.is_integral()
        assert to_t_poly(t_k_qratio(k)) == p
        # literal round trip: re-expand the t-polynomial in q and convert back
        expanded = QRatio.zero()
        for i, c in enumerate(p.coeffs):
            expanded = expanded + t**i * c
        assert to_t_poly(expanded) == p


def test_substitute_matches_t_k():
    # q -> q^2 maps t to t_2 = t(t+4)
    t = t_k_qratio(1)
    t2 = t.substitute_power(2)
    assert to_t_poly(t2) == t_k_in_t(2)


def test_pole_extract_golden():
    g, rem = pole_extract(q(9) / (q(3) * q(3) * q(3)), 3, "plain")
    assert g == 3 and rem == RPoly([1])
    g, rem = pole_extract(q(1) / (q(1) * q(1) * q(1)), 1, "plain")
    assert g == 1 and rem.is_zero()
    # [12]/([6][2]^2) carries the even/odd pole shape: plain fails, half works
    f = q(12) / (q(6) * q(2) * q(2))
    with pytest.raises(NoSuchDecomposition):
        pole_extract(f, 2, "plain")
    g, rem = pole_extract(f, 2, "half")
    assert g == 2
    assert rem == RPoly([2, 4, 1])  # the y-image of t + 2


def test_pole_extract_rejects_nonpolynomial():
    f = QRatio(QLaurent.one(), qnum(2) * qnum(2))  # 1/t_2 is not a t_1 pole
    with pytest.raises(NoSuchDecomposition):
        pole_extract(f, 1, "plain")


def test_qnum_parity_membership():
    rng = random.Random(3)
    for _ in range(60):
        m = rng.randint(1, 6)
        parts = [rng.randint(1, 8) for _ in range(m)]
        prod = QRatio.one()
        for a in parts:
            prod = prod * QRatio(qnum(a))
        in_y = True
        try:
            to_y_poly(prod)
        except NotSymmetricInT:
            in_y = False
        assert in_y == (m % 2 == 0)
        in_t = try_to_t_poly(prod) is not None
        assert in_t == (m % 2 == 0 and sum(parts) % 2 == 0)


def test_scaled_ratio_constant_terms():
    # [ka]/[a] constant term and the even/odd y-remainder
    for k in range(1, 9):
        for a in range(1, 9):
            f = q(k * a) / q(a)
            if k % 2 == 1 or a % 2 == 0:
                p = to_t_poly(f)
                assert p.is_integral() and p.constant() == k
            else:
                ry = to_y_poly(f).mod(RPoly([0, 4, 1]))
                assert ry == RPoly([k, Fraction(k, 2)])


def test_lcm_gcd_ratio_is_integral():
    rng = random.Random(5)
    hits = 0
    while hits < 40:
        a, b, c = (rng.randint(1, 20) for _ in range(3))
        if math.gcd(a, math.gcd(b, c)) != 1:
            continue
        hits += 1
        num = (
            qnum(math.lcm(a, b, c))
            * qnum(math.gcd(a, b))
            * qnum(math.gcd(b, c))
            * qnum(math.gcd(c, a))
        )
        den = qnum(a) * qnum(b) * qnum(c) * qnum(1)
        f = QRatio(num) / QRatio(den)
        assert f.is_laurent()
        assert f.num.is_symmetric() and f.num.has_integer_powers()
        assert f.num.has_integer_coeffs()
        assert f.num.value_at_one() == 1


def test_scaled_partition_pole_constant():
    for d in range(2, 7):
        for lam in enumerate_partitions(d):
            if len(lam) < 2:
                continue
            for k in range(1, 9):
                if not all(
                    math.gcd(k, parts_gcd(lam[:i] + lam[i + 1 :])) == 1
                    for i in range(len(lam))
                ):
                    continue
                if not (k % 2 == 1 or d % 2 == 0):
                    continue
                num = QLaurent.one()
                for part in lam:
                    num = num * qnum(k * part)
                f = QRatio(num) / (QRatio(qnum(k) * qnum(k)) * QRatio(qnum_product(lam)))
                g, rem = pole_extract(f, 1, "plain")
                assert g == k ** (len(lam) - 2)
                assert rem.is_integral()


def test_serialization_exact():
    f = q(2) / q(1) + QRatio.const(Fraction(1, 3))
    text = format_qratio(f)
    assert "/" in text or "x^" in text
    assert "." not in text  # never decimal floats
