#!/usr/bin/env python3
"""Smoke test for the sprime_py extension module.

Builds the cdylib with cargo if it is missing, copies it next to this script
under the importable name, and exercises the main classes and functions.
"""

import json
import shutil
import subprocess
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
ROOT = HERE.parent


def ensure_module():
    lib = ROOT / "target" / "debug" / "libsprime_py.so"
    if not lib.exists():
        subprocess.run(["cargo", "build", "-p", "sprime-py"], cwd=ROOT, check=True)
    dest = HERE / "sprime_py.so"
    if not dest.exists() or lib.stat().st_mtime > dest.stat().st_mtime:
        shutil.copy2(lib, dest)
    sys.path.insert(0, str(HERE))


ensure_module()
import sprime_py as sp  # noqa: E402


def check(cond, label):
    if not cond:
        raise AssertionError(label)
    print(f"ok: {label}")


# --- integer-layer worked cases ---

m6 = sp.Module([6])
j = sp.ZteIdeal(m6, [(0, 2)])
check(j.is_s_prime([(2, 0)])["verdict"], "0 x 2(Z/6) is S-prime in Z x| Z/6 for S = <(2, 0)>")

m2 = sp.Module([2])
p = sp.ZteIdeal(m2, [(6, 1)])
check(p.is_s_maximal([(2, 0)])["verdict"], "<(6, 1)> in Z x| Z/2 is S-maximal")
check(not p.contains(0, 1), "(0, 1) stays outside <(6, 1)>")
check(not p.is_homogeneous(), "<(6, 1)> is not homogeneous")

m4 = sp.Module([4])
j4 = sp.ZteIdeal(m4, [(6, 1)])
check(j4.j0 == 12, "degree-0 slice of <(6, 1)> in Z x| Z/4 is 12Z")
cert = j4.is_s_prime([(2, 0)])
check(cert["verdict"] and cert["witness"] == "2^2" and cert["residual"] == 3,
      "S-prime with witness 2^2 and residual 3Z")

zc = sp.z_is_s_prime(2, [3])
check(zc["verdict"] and zc["residual"] == 2, "2Z is S-prime in Z for S = <3>")
check(not sp.z_is_s_maximal(0, [2])["verdict"], "0Z is never S-maximal in Z")
check(sp.z_is_s_divisible(sp.Module([5]), [2]), "Z/5 is S-divisible for S = <2>")

# --- finite rings ---

r12 = sp.Ring.parse("Z/12")
check(r12.cardinality == 12, "Z/12 has 12 elements")
check(len(r12.ideals()) == 6, "Z/12 has 6 ideals")

zero = r12.ideal([0])
s4 = r12.mult_set([4])
res = sp.is_s_maximal(zero, s4)
dfn = sp.is_s_maximal(zero, s4, definitional=True)
check(res["verdict"] and res["verdict"] == dfn["verdict"],
      "0 is S-maximal in Z/12 for S = <4>, residual and definitional tests agree")
check(res["residual"] == [[3]], "the maximal disjoint residual is <3>")

check(len(sp.spec_s(r12, s4)) == len(sp.max_s(r12, s4)) == 3,
      "Z/12 with S = <4> has three S-primes, all S-maximal")

prime = sp.find_disjoint_prime(r12.ideal([6]), s4)
check(prime.is_prime() and not prime.contains(4), "<6> sits under a prime avoiding S")

te = sp.Ring.parse("TE(Z/4, Z/2)")
primes = [i for i in te.ideals() if i.is_prime()]
check(len(primes) == 1, "TE(Z/4, Z/2) has one prime ideal")
parts = sp.components(primes[0])
check(parts["homogeneous"] and parts["j1_cardinality"] == 2,
      "the prime is homogeneous and contains the whole module layer")

# --- packing properties ---

check(sp.is_compactly_s_packed(r12, s4)["verdict"], "Z/12 is compactly S-packed for S = <4>")
check(sp.is_coprimely_s_packed(r12, s4)["verdict"], "Z/12 is coprimely S-packed for S = <4>")
pm = sp.is_s_pm(r12, s4)
check(not pm["verdict"] and pm["violation"]["kind"] == "multiple-containing-maximals",
      "Z/12 is not S-pm for S = <4>: one S-prime sits under several S-maximals")

# --- verification suites ---

catalog = json.dumps({
    "baseModuli": [4, 6],
    "moduleOrders": [1, 2, 3, 6],
    "sampledPairs": 2,
    "pmZlayerInstances": 60,
    "zlayerModuleOrders": [2, 4, 6],
})
examples = sp.reproduce_examples()
check(examples["failures"] == [], "the worked examples reproduce")
report = sp.run_suite("th1", catalog)
check(report["failures"] == [] and report["instances"] > 0, "suite th1 passes on a small catalog")
hits = sp.search_counterexamples("nonhomogeneous-s-prime", catalog)["hits"]
check(len(hits) > 0, "the search finds non-homogeneous S-prime ideals")
check(set(sp.SUITES) >= {"th1", "th2", "sat", "pm-zlayer"}, "suite registry is exposed")

print("smoke test passed")
