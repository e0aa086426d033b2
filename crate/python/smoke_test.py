"""Smoke test for the parhopf_py extension.

Builds the extension with cargo, loads the shared object and exercises the
main types. Run from anywhere: python3 python/smoke_test.py
"""

import importlib.util
import json
import pathlib
import shutil
import subprocess
import sys
import sysconfig
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent
GALLERY = ROOT / "gallery"


def load_extension():
    subprocess.run(
        ["cargo", "build", "-p", "parhopf-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    target = ROOT / "target" / "debug"
    built = next(p for p in (target / "libparhopf_py.so", target / "libparhopf_py.dylib") if p.exists())
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    dest = pathlib.Path(tempfile.mkdtemp()) / f"parhopf_py{suffix}"
    shutil.copy(built, dest)
    spec = importlib.util.spec_from_file_location("parhopf_py", dest)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    ph = load_extension()

    h = ph.Hopf("cyclic:4")
    assert h.dim == 4 and h.labels == ["δ0", "δ1", "δ2", "δ3"]
    assert all(status == "pass" for _, _, status, _ in h.verify())
    assert h.modular_element() == ["1", "1", "1", "1"]
    # Δ(δ1) = Σ_{p+q=1} δp⊗δq
    delta = h.coproduct(["0", "1", "0", "0"])
    assert [i for i, c in enumerate(delta) if c != "0"] == [1, 4, 11, 14]

    c = ph.Coaction.from_spec(str(GALLERY / "induced-coaction-z4.toml"))
    assert not c.is_global() and c.coinvariants_dim() == 1
    assert all(status != "fail" for _, _, status, _ in c.verify())
    m = c.morita()
    # (δ0, δ0) = δ0 + δ2 = f_N in the basis {δ0, δ2} of f_N·A_G
    assert m.pairing(["1", "0"], ["1", "0"]) == ["1", "1"]
    assert m.galois_verdict() == "bijective"
    assert len(set(m.galois_predicates())) == 1

    a = ph.Action.from_spec(str(GALLERY / "lambda-action.toml"))
    assert a.act(["1", "0", "0", "0"], ["2", "4"]) == ["1", "2"]
    d = ph.Coaction.dual_of_action(str(GALLERY / "induced-action-z4.toml"))
    assert all(status != "fail" for _, _, status, _ in d.verify())

    code, report = ph.run(str(GALLERY / "global-self-coaction-z4.toml"), "galois")
    assert code == 0
    values = json.loads(report)["sections"][-1]["values"]
    assert values["verdict"] == "bijective"
    code, _ = ph.run(str(GALLERY / "integers-window.toml"), "verify-mhopf")
    assert code == 0
    print("parhopf_py smoke test passed")


if __name__ == "__main__":
    sys.exit(main())
