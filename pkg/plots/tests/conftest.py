"""Shared fixtures: small end-to-end CLI runs feeding the recipes.

The plots package must consume the primary component only through its
CLI and CSV outputs, so every input here is produced by `hhg-kh run`.
"""

import pytest

from khhg.cli import main as khhg_main

LASER = """
[laser]
wavelength_nm = 800.0
intensity_W_cm2 = 3.16e13
n_cycles = 2

[target]
kind = "hydrogen"
Z = 1.0
"""


def run_cli(tmp_path, name, body):
    cfg = tmp_path / name
    cfg.write_text(body)
    assert khhg_main(["run", str(cfg)]) == 0


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory):
    """One directory holding CLI outputs for all five recipes."""
    root = tmp_path_factory.mktemp("cli_out")
    out = root / "data"
    run_cli(root, "fig1.toml", f'scenario = "fig1"\n{LASER}'
            f'[output]\ndir = "{out}"\n')
    run_cli(root, "spec.toml", f'scenario = "spectrum"\n{LASER}'
            f'[engine]\nname = "exact"\n[numerics]\nn_samples = 256\n'
            f'[output]\ndir = "{out}"\nnormalize = "max"\n')
    run_cli(root, "pa.toml", f'scenario = "spectrum"\n{LASER}'
            f'[engine]\nname = "peaking"\n[numerics]\nn_samples = 256\n'
            f'[output]\ndir = "{out}"\nnormalize = "max"\n')
    run_cli(root, "comb.toml", f'scenario = "longpulse"\n{LASER}'
            f'[numerics]\nn_max = 9\n'
            f'[output]\ndir = "{out}"\nnormalize = "max"\n')
    run_cli(root, "scan.toml", f'scenario = "wavelength_scan"\n{LASER}'
            f'[engine]\nname = "exact"\n[numerics]\nn_samples = 256\n'
            f'[scan]\nwavelengths_nm = [800.0, 1600.0, 3200.0]\n'
            f'[output]\ndir = "{out}"\nnormalize = "max"\n')
    run_cli(root, "gabor.toml", f'scenario = "gabor"\n{LASER}'
            f'[engine]\nname = "exact"\n[numerics]\nn_samples = 256\n'
            f'[output]\ndir = "{out}"\n')
    return out
