import numpy as np
import pytest

from spinsim import ConfigError, RunConfig, load_raman_params, load_run_config
from spinsim.config import parse_initial, recipe_path
from spinsim.spinops import SchemeKind, two_axis_raman


def test_parse_initial_accepts_the_three_forms():
    assert parse_initial("all_up") == "all_up"
    assert parse_initial(" all_down ") == "all_down"
    kind, theta, phi = parse_initial("coherent(1.5708, 0.25)")
    assert kind == "coherent"
    assert abs(theta - 1.5708) < 1e-12 and abs(phi - 0.25) < 1e-12


@pytest.mark.parametrize(
    "bad", ["all_sideways", "coherent(1.0)", "coherent(a, b)", "coherent(1,2,3)", ""]
)
def test_parse_initial_rejects_nonsense(bad):
    with pytest.raises(ConfigError):
        parse_initial(bad)


def test_config_validation():
    ok = RunConfig(scheme=two_axis_raman(), n_atoms=4)
    assert ok.n_points >= 2
    with pytest.raises(ConfigError):
        RunConfig(scheme=two_axis_raman(), n_atoms=0)
    with pytest.raises(ConfigError):
        RunConfig(scheme=two_axis_raman(), n_atoms=4, t_max=-1.0)
    with pytest.raises(ConfigError):
        RunConfig(scheme=two_axis_raman(), n_atoms=4, n_points=1)
    with pytest.raises(ConfigError):
        RunConfig(scheme=two_axis_raman(), n_atoms=4, outputs=("entropy",))
    with pytest.raises(ConfigError):
        RunConfig(scheme=two_axis_raman(), n_atoms=4, initial="sideways")
    with pytest.raises(ConfigError):
        RunConfig(scheme=two_axis_raman(), n_atoms=4, seed=-1)


def test_zero_t_max_is_a_degenerate_single_point_grid():
    cfg = RunConfig(scheme=two_axis_raman(), n_atoms=4, t_max=0.0)
    assert cfg.t_max == 0.0


def test_ghz_output_needs_even_atom_number():
    with pytest.raises(ConfigError):
        RunConfig(scheme=two_axis_raman(), n_atoms=5, outputs=("ghz_fidelity",))
    RunConfig(scheme=two_axis_raman(), n_atoms=6, outputs=("ghz_fidelity",))


def test_default_outputs_depend_on_parity():
    even = RunConfig(scheme=two_axis_raman(), n_atoms=4)
    odd = RunConfig(scheme=two_axis_raman(), n_atoms=5)
    assert even.outputs == ("edge_populations", "ghz_fidelity", "squeezing")
    assert odd.outputs == ("edge_populations", "squeezing")


def test_outputs_are_deduplicated_in_order():
    cfg = RunConfig(
        scheme=two_axis_raman(),
        n_atoms=4,
        outputs=("squeezing", "moments", "squeezing"),
    )
    assert cfg.outputs == ("squeezing", "moments")


def test_initial_state_construction():
    cfg = RunConfig(scheme=two_axis_raman(), n_atoms=4, initial="all_down")
    assert cfg.initial_state().amplitudes[-1] == 1.0
    cfg = RunConfig(scheme=two_axis_raman(), n_atoms=4, initial="coherent(1.5707963267948966, 0)")
    mean_up = abs(cfg.initial_state().amplitudes[0]) ** 2
    assert abs(mean_up - (1 / np.sqrt(2)) ** 8) < 1e-12


@pytest.mark.parametrize("name", ["fig2a", "fig2b", "fig3", "raman_sodium"])
def test_packaged_recipes_resolve_by_bare_name(name):
    assert recipe_path(name) is not None
    assert recipe_path("no_such_recipe") is None


def test_recipe_fig3_loads_with_expected_fields():
    cfg = load_run_config("fig3")
    assert cfg.scheme.kind is SchemeKind.TWO_AXIS_RAMAN
    assert cfg.n_atoms == 1000
    assert cfg.initial == "all_down"
    assert "squeezing" in cfg.outputs


def test_overrides_beat_file_values(tmp_path):
    cfg_file = tmp_path / "base.cfg"
    cfg_file.write_text(
        "[run]\n"
        "scheme = OneAxisTwisting\n"
        "n_atoms = 10\n"
        "t_max = 2.0  # inline comment is stripped\n"
        "n_points = 50\n"
    )
    cfg = load_run_config(str(cfg_file), {"n_atoms": 20, "t_max": None})
    assert cfg.n_atoms == 20  # override wins
    assert cfg.t_max == 2.0  # None override ignored
    assert cfg.n_points == 50


def test_overrides_alone_are_enough():
    cfg = load_run_config(None, {"scheme": "MolmerSorensen", "n_atoms": 8})
    assert cfg.scheme.kind is SchemeKind.MOLMER_SORENSEN
    assert cfg.scheme.rabi == 1.0


def test_missing_scheme_or_natoms_is_an_error():
    with pytest.raises(ConfigError):
        load_run_config(None, {"n_atoms": 8})
    with pytest.raises(ConfigError):
        load_run_config(None, {"scheme": "MolmerSorensen"})


def test_unknown_file_keys_are_rejected(tmp_path):
    cfg_file = tmp_path / "bad.cfg"
    cfg_file.write_text("[run]\nscheme = OneAxisTwisting\nn_atoms = 4\ncolor = red\n")
    with pytest.raises(ConfigError):
        load_run_config(str(cfg_file))


def test_missing_file_and_unknown_recipe_name():
    with pytest.raises(ConfigError):
        load_run_config("/no/such/file.cfg")


def test_bad_scheme_name_is_a_config_error():
    with pytest.raises(ConfigError):
        load_run_config(None, {"scheme": "ThreeAxisTwisting", "n_atoms": 8})


def test_outputs_list_parsing(tmp_path):
    cfg_file = tmp_path / "o.cfg"
    cfg_file.write_text(
        "[run]\nscheme = TwoAxisRaman\nn_atoms = 6\n"
        "outputs = edge_populations, squeezing\n"
    )
    cfg = load_run_config(str(cfg_file))
    assert cfg.outputs == ("edge_populations", "squeezing")


def test_raman_section_requires_all_keys(tmp_path):
    cfg_file = tmp_path / "r.cfg"
    cfg_file.write_text("[raman]\nomega1 = 1e7\nomega2 = 1e7\n")
    with pytest.raises(ConfigError):
        load_raman_params(str(cfg_file))


def test_raman_recipe_loads():
    p = load_raman_params("raman_sodium")
    assert p.eta == 0.1
    assert p.mass > 0


def test_run_section_required(tmp_path):
    cfg_file = tmp_path / "s.cfg"
    cfg_file.write_text("[other]\nx = 1\n")
    with pytest.raises(ConfigError):
        load_run_config(str(cfg_file))
