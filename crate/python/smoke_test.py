"""Smoke test for the boolstab extension module.

Build and install first:
    pip install maturin
    maturin develop --release -m crates/python/Cargo.toml
"""

import json
import math

import boolstab


def close(a, b, tol):
    return abs(a - b) <= tol


def main():
    p = boolstab.ck_point(0.914)
    assert close(p["eps_star"], 0.195055, 2e-6), p
    assert close(p["omega_max"], 0.193026, 2e-6), p
    assert close(p["t_rho"], 0.663100, 1e-4), p
    assert close(p["theta"], -0.00169063, 1e-5), p
    assert close(boolstab.eps_star(0.914), p["eps_star"], 0.0)

    rho = 0.6
    dictator = 0.8 * math.log(0.8) + 0.2 * math.log(0.2)
    assert close(boolstab.gamma_phi(0.0, rho), dictator, 1e-9)
    assert close(boolstab.gamma_phi(0.3, rho), boolstab.gamma_phi(0.7, rho), 1e-8)
    assert close(boolstab.stability(2, [2, 3], rho), dictator, 1e-12)
    assert boolstab.dictator_distances(2, [2, 3]) == [0.5, 0.0]

    cert = json.loads(boolstab.verify_interval(0.9, 0.914))
    assert cert["pass"] and cert["n_points"] == 176, cert

    report = json.loads(boolstab.brute(3, [0.5]))
    assert report["pass"] and report["functions"] == 70, report

    try:
        boolstab.eps_star(1.5)
    except ValueError:
        pass
    else:
        raise AssertionError("eps_star(1.5) should raise")

    print("boolstab", boolstab.__version__, "smoke test ok")


if __name__ == "__main__":
    main()
