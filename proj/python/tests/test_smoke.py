import cmath
import json
import math

import pytest

import wdvv


def test_a1_value():
    # F = tau/(4 i pi) u^2 + u x1^2 + x1^4 G2/2 at u = x1 = 1, tau = i
    md = wdvv.Modulus(1j)
    want = 1j / (4j * math.pi) + 1 + md.G2() / 2
    assert abs(wdvv.f_phi_An(1, 1.0, [1.0], 1j) - want) < 1e-13
    assert abs(md.G2() - math.pi) < 1e-13  # G2(i) = pi


def test_legendre_and_g2():
    md = wdvv.Modulus(0.2 + 1.1j)
    tau = md.tau
    assert abs(tau * wdvv.wzeta(0.5, md) - wdvv.wzeta(tau / 2, md) - 1j * math.pi) < 1e-12
    assert abs(2 * wdvv.wzeta(0.5, md) - md.G2()) < 1e-12


def test_bell():
    xs = [1.0, 2.0, 3.0, 4.0]
    assert wdvv.bell_partial(3, 2, xs) == pytest.approx(2 * xs[0] * xs[1])
    assert abs(wdvv.bell_partial(0, 0, xs) - 1) < 1e-15


def test_point_and_lambda():
    p = wdvv.random_point([1, 0], seed=3)
    assert all(e["pass"] for e in wdvv.validate(p))
    z = 0.31 + 0.17j
    l = wdvv.lambda_eval(p, z)
    assert abs(wdvv.lambda_eval(p, z + 1) - l) < 1e-10
    assert abs(wdvv.lambda_eval(p, z + p.tau) - l) < 1e-10
    back = wdvv.HurwitzPoint.from_json(p.to_json())
    assert back.to_json() == p.to_json()


def test_components_sum():
    p = wdvv.random_point([1, 1], seed=5)
    parts = wdvv.first_line(p) + wdvv.sigma2(p) + wdvv.sigma3(p) + wdvv.sigma4(p)
    assert cmath.isfinite(wdvv.f_phi(p))
    assert cmath.isfinite(parts)


def test_wdvv_and_q():
    p = wdvv.random_point([1, 0], seed=2)
    ch = wdvv.FlatChart([1, 0])
    assert ch.labels == ["u", "tau", "s1", "x1(0)", "x1(1)"]
    assert wdvv.wdvv_max_residual(ch, ch.coords(p)) < 1e-7
    qp = wdvv.t_q_map(p, 0.1 + 0.05j)
    assert wdvv.wdvv_max_residual(ch, qp.deformed_coords(), q=qp.q) < 1e-7
    back = wdvv.t_q_inverse(qp)
    assert max(abs(a - b) for a, b in zip(ch.coords(back), ch.coords(p))) < 1e-13
    assert abs(wdvv.lambda_q_eval(qp, 0.2 + 0.3j) - wdvv.lambda_eval(p, 0.2 + 0.3j)) < 1e-10


def test_errors():
    with pytest.raises(wdvv.WdvvError, match="DegenerateModulus"):
        wdvv.t_q_map(wdvv.random_point([1], tau=1j), 1j)
    with pytest.raises(wdvv.WdvvError):
        wdvv.ramanujan_residual(7, wdvv.Modulus(1j))
    with pytest.raises(wdvv.WdvvError):
        wdvv.run_suite("nope")


def test_suite_report():
    rep = wdvv.run_suite("bell", seed=7)
    assert all(e["pass"] for e in rep)
    assert any(e.get("control") for e in rep)
    assert json.dumps(rep) == json.dumps(wdvv.run_suite("bell", seed=7))
    strict = wdvv.run_suite("special-fn", tol=1e-300)
    assert not all(e["pass"] for e in strict)
