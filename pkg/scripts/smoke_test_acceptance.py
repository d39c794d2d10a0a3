#!/usr/bin/env python3
"""Graphon Entropy v1.0 — Smoke Test d'acceptation

Rejoue les contrôles d'acceptation (structure, tendances d'échelle,
oracles) et affiche un tableau succès/échec.

Usage:
    python scripts/smoke_test_acceptance.py

Vérifie:
1. ER: optimum constant ½, S = ln 2
2. Région plate: bipodal symétrique, racine exacte (oracle bissection)
3. Région plate: tendances de β et ΔB
4. Géométrie des scallops
5. Au-dessus des scallops: symétries (1,2) et (2,2)
6. Au-dessus du scallop 1: pente ½ de ΔB, β√Δt stable
7. Paramètres d'ordre
8. Sous le bord supérieur: bipodal (√e, 1-√e), β/α → -2/√e
9. Diagnostics d'optimalité sur tous les optima
10. Invisibilité ERGM
11. Gradients, invariances, déterminisme du balayage
"""

import logging
import math
import sys
import time
from pathlib import Path

# Ajouter le repo au path
repo_root = Path(__file__).parent.parent
sys.path.insert(0, str(repo_root))

import numpy as np


def bisection_root(e: float, t: float) -> float:
    lo, hi = max(0.0, 2 * e - 1), e
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if 0.75 * mid * (2 * e - mid) ** 2 + 0.25 * mid ** 3 > t:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def run_smoke_test():
    """Lance le smoke test d'acceptation."""
    from src.boundary import scallop_index, scallop_params, scallop_cubic
    from src.ergm import invisibility_test
    from src.graphon import MultipodalGraphon, edge_density, triangle_density, shannon_entropy
    from src.graphon.densities import functionals_from_arrays
    from src.optimizer import (
        AnsatzSpec, SolverOptions, ansatz_solve, gradients_from_arrays,
        maximize_entropy, maximize_entropy_auto,
    )
    from src.phase import detect_symmetry, order_parameter, rank, spectral_order_parameter
    from src.reports import write_csv
    from src.scaling import decade_ratios, flat_boundary_study, scallop_study, top_beta_over_alpha_limit, top_boundary_study
    from src.sweep import SweepSpec, run_sweep
    from src.variational import diagnose
    from scipy.optimize import minimize_scalar

    print("=" * 70)
    print("GRAPHON ENTROPY v1.0 — SMOKE TEST D'ACCEPTATION")
    print("=" * 70)
    print()

    opts = SolverOptions(n_starts=12, k_max=4)
    results = {}
    solved = []
    errors = []

    def check(label, fn):
        start = time.perf_counter()
        try:
            detail = fn()
            results[label] = (True, time.perf_counter() - start, detail or "")
            print(f"   ✅ {detail or 'ok'}")
        except Exception as e:
            results[label] = (False, time.perf_counter() - start, str(e))
            errors.append(f"{label}: {e}")
            print(f"   ❌ Erreur: {e}")
        print()

    # === 1. ER ===
    print("1. Point d'Erdős–Rényi (0.5, 0.125)...")

    def er_point():
        result = maximize_entropy(0.5, 0.125, 1, opts)
        solved.append(result)
        assert abs(result.entropy - math.log(2.0)) < 1e-9, f"S = {result.entropy}"
        assert abs(result.graphon.blocks[0, 0] - 0.5) < 1e-8
        return f"S = {result.entropy:.12f}"

    check("1. ER", er_point)

    # === 2. RÉGION PLATE: STRUCTURE ===
    print("2. Région plate: bipodal symétrique...")

    def flat_structure():
        for e in (0.2, 0.3, 0.4):
            for t in (1e-3, 1e-4):
                result = maximize_entropy_auto(e, t, opts)
                exact = ansatz_solve(e, t, AnsatzSpec("symmetric_bipodal"))
                solved.append(result)
                g = result.graphon
                assert g.k == 2, f"k = {g.k} à ({e}, {t})"
                assert abs(g.podes[0] - 0.5) < 1e-4
                assert abs(g.blocks[0, 0] - g.blocks[1, 1]) < 1e-6
                assert abs(result.entropy - exact.entropy) < 1e-8
                assert abs(exact.graphon.blocks[0, 0] - bisection_root(e, t)) < 1e-8
        return "6 points bipodaux symétriques"

    check("2. Plat (structure)", flat_structure)

    # === 3. RÉGION PLATE: ÉCHELLE ===
    print("3. Région plate: lois d'échelle à e = 0.3...")

    def flat_scaling():
        report = flat_boundary_study(0.3)
        ratios = report.column("beta_ratio")
        assert np.all(np.diff(ratios) > 0) and abs(ratios[-1] - 1.0) < 0.3, f"β ratios {ratios}"
        for r in decade_ratios(report.column("dB_ratio")):
            assert abs(r - 1.0) < 0.25
        return f"β·2e²/ln(1/t) = {np.round(ratios, 3).tolist()}"

    check("3. Plat (échelle)", flat_scaling)

    # === 4. SCALLOPS ===
    print("4. Géométrie des scallops...")

    def scallops():
        spec = scallop_params(0.6)
        assert abs(spec.c0 - 0.4387426) < 1e-6
        assert abs(spec.t0 - (7.0 - 2.0 * math.sqrt(0.1)) / 45.0) < 1e-12
        res = minimize_scalar(lambda c: scallop_cubic(1, 0.6, c), bounds=(1 / 3, 0.6), method="bounded",
                              options={"xatol": 1e-12})
        assert abs(res.fun - spec.t0) < 1e-10
        assert scallop_params(0.5).t0 == 0.0
        assert scallop_index(0.666) == 1 and scallop_index(2 / 3) == 2 and scallop_index(0.75) == 3
        return f"c₀ = {spec.c0:.7f}, t₀ = {spec.t0:.7f}"

    check("4. Scallops", scallops)

    # === 5. AU-DESSUS DES SCALLOPS ===
    print("5. Au-dessus des scallops: symétries...")

    def scallop_structure():
        t6 = scallop_params(0.6).t0 + 1e-4
        r6 = maximize_entropy_auto(0.6, t6, opts)
        solved.append(r6)
        g = r6.graphon
        assert g.k == 3 and detect_symmetry(g) == (1, 2) and rank(g) == 3, f"k={g.k}, sym={detect_symmetry(g)}"
        assert np.max(np.diag(g.blocks)) < 1e-3
        assert np.sum(np.triu(g.blocks, 1) > 0.999) == 2

        t7 = scallop_params(0.7).t0 + 1e-4
        r7 = maximize_entropy_auto(0.7, t7, opts)
        solved.append(r7)
        assert r7.k == 4 and detect_symmetry(r7.graphon) == (2, 2) and rank(r7.graphon) == 4
        return "C(1,2) à 0.6, C(2,2) à 0.7"

    check("5. Scallop (structure)", scallop_structure)

    # === 6. AU-DESSUS DES SCALLOPS: ÉCHELLE ===
    print("6. Scallop 1: lois d'échelle à e = 0.6...")

    def scallop_scaling():
        report = scallop_study(0.6, opts=opts)
        assert abs(report.fitted_exponent - 0.5) < 0.05, f"pente {report.fitted_exponent:.4f}"
        for r in decade_ratios(report.column("beta_sqrt_dt")):
            assert abs(r - 1.0) < 0.2
        return f"pente log-log {report.fitted_exponent:.4f}"

    check("6. Scallop (échelle)", scallop_scaling)

    # === 7. PARAMÈTRES D'ORDRE ===
    print("7. Paramètres d'ordre...")

    def order_params():
        er = solved[0].graphon
        assert abs(order_parameter(er, 2)) < 1e-10
        a20 = ansatz_solve(0.3, 1e-3, AnsatzSpec("symmetric_bipodal")).graphon
        assert order_parameter(a20, 2) < -1e-6
        assert abs(order_parameter(a20, 3)) < 1e-10
        c12 = ansatz_solve(0.6, scallop_params(0.6).t0 + 1e-4, AnsatzSpec("n2_symmetric", n=1), opts).graphon
        assert abs(order_parameter(c12, 3)) > 1e-8
        c22 = ansatz_solve(0.7, scallop_params(0.7).t0 + 1e-4, AnsatzSpec("n2_symmetric", n=2), opts).graphon
        assert abs(order_parameter(c12, 4)) < 1e-12 < abs(order_parameter(c22, 4))
        for g in (a20, c12, c22):
            for k in (2, 3):
                newton, spectral = order_parameter(g, k), spectral_order_parameter(g, k)
                assert abs(newton - spectral) <= 1e-9 * abs(spectral) + 1e-15
        return "ER, A(2,0), C(1,2), C(2,2) séparés"

    check("7. Ordre", order_params)

    # === 8. BORD SUPÉRIEUR ===
    print("8. Sous le bord supérieur à e = 0.49...")

    def top_boundary():
        e = 0.49
        result = maximize_entropy(e, e ** 1.5 - 1e-3, 2, opts)
        solved.append(result)
        g = result.graphon
        widths = sorted(g.podes, reverse=True)
        assert abs(widths[0] - math.sqrt(e)) < 0.02
        big = int(np.argmax(g.podes))
        small = 1 - big
        assert abs(g.blocks[big, big] - 1.0) < 1e-2
        assert g.blocks[big, small] < 1e-2 and g.blocks[small, small] < 1e-2
        mult = result.multipliers
        assert mult.beta < 0.0 < mult.alpha
        limit = top_beta_over_alpha_limit(e)
        ratio = mult.beta / mult.alpha
        assert abs(ratio / limit - 1.0) < 0.15, f"β/α = {ratio:.4f}, limite -2/√e = {limit:.4f}"
        report = top_boundary_study(e, opts=opts)
        for r in decade_ratios(report.column("dB_ratio")):
            assert abs(r - 1.0) < 0.25
        return f"β/α = {ratio:.4f} (limite -2/√e = {limit:.4f})"

    check("8. Bord supérieur", top_boundary)

    # === 9. DIAGNOSTICS ===
    print("9. Diagnostics d'optimalité...")

    def diagnostics():
        for result in solved:
            report = diagnose(result.graphon, result.multipliers)
            assert report.is_optimal(), f"{result.target}: {report}"
        return f"{len(solved)} optima certifiés"

    check("9. Diagnostics", diagnostics)

    # === 10. ERGM ===
    print("10. Invisibilité ERGM...")

    def ergm():
        witnesses = []
        for e, t in ((0.6, scallop_params(0.6).t0 + 1e-4), (0.5, 0.34)):
            report = invisibility_test(e, t, opts)
            assert not report.visible, f"({e}, {t}) visible"
            witnesses.append(report.witness)
        for p in (0.2, 0.5, 0.8):
            assert invisibility_test(p, p ** 3, opts).visible
        return f"témoins {witnesses}"

    check("10. ERGM", ergm)

    # === 11. PROPRIÉTÉS ===
    print("11. Gradients, invariances, déterminisme...")

    def properties():
        rng = np.random.default_rng(7)
        h = 1e-6
        for _ in range(20):
            B = rng.uniform(0.05, 0.95, size=(3, 3))
            B = np.triu(B) + np.triu(B, 1).T
            g = MultipodalGraphon.from_widths(rng.uniform(0.2, 1.0, size=3), B)
            c, B = g.podes.copy(), g.blocks.copy()
            grads = gradients_from_arrays(c, B)
            for i in range(3):
                up, down = c.copy(), c.copy()
                up[i] += h
                down[i] -= h
                fd = (np.array(functionals_from_arrays(up, B)) - np.array(functionals_from_arrays(down, B))) / (2 * h)
                for value, grad in zip(fd, (grads.dS_dc, grads.deps_dc, grads.dtau_dc)):
                    assert abs(value - grad[i]) <= 1e-6 * max(1.0, abs(grad[i]))
            split = g.split_pode(0, 0.3).permute([3, 1, 0, 2])
            for f in (edge_density, triangle_density, shannon_entropy):
                assert abs(f(split) - f(g)) < 1e-12

        params = dict(e_min=0.2, e_max=0.4, e_steps=2, t_min=1e-3, t_max=5e-3, t_steps=2,
                      opts=SolverOptions(n_starts=4, k_max=2))
        serial = write_csv(run_sweep(SweepSpec(workers=1, **params)))
        parallel = write_csv(run_sweep(SweepSpec(workers=2, **params)))
        assert serial == parallel, "CSV différent selon le nombre de workers"
        return "FD, invariances et CSV identiques"

    check("11. Propriétés", properties)

    # === RÉSUMÉ ===
    print("=" * 70)
    print(f"{'Critère':<28}{'Statut':<10}{'Durée':>10}")
    print("-" * 70)
    for label, (ok, elapsed, _) in results.items():
        print(f"{label:<28}{'OK' if ok else 'ÉCHEC':<10}{elapsed:>9.1f}s")
    print("=" * 70)
    if errors:
        print(f"❌ SMOKE TEST ÉCHOUÉ — {len(errors)} erreur(s):")
        for e in errors:
            print(f"   - {e}")
        return False

    print("✅ SMOKE TEST D'ACCEPTATION RÉUSSI")
    print()
    print("Pour lancer les tests pytest:")
    print("  pytest tests/ -v")
    return True


if __name__ == "__main__":
    logging.basicConfig(level=logging.WARNING, format="%(asctime)s [%(levelname)s] %(message)s", datefmt="%H:%M:%S")
    success = run_smoke_test()
    sys.exit(0 if success else 1)
