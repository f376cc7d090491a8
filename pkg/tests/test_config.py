import math

import pytest

import asymreg as ar

from conftest import CONFIG_DIR, GOLDEN_NAMES


# ---------------------------------------------------------------------------
# golden files

ALL_NAMES = sorted(p.stem for p in CONFIG_DIR.glob("*.json"))


def test_config_dir_is_populated():
    assert set(GOLDEN_NAMES) <= set(ALL_NAMES)
    assert len(ALL_NAMES) >= 7


@pytest.mark.parametrize("name", ALL_NAMES)
def test_golden_configs_load_and_round_trip(name):
    path = CONFIG_DIR / f"{name}.json"
    cfg = ar.load_config(path)
    again = ar.config_from_dict(ar.config_to_dict(cfg))
    assert ar.config_to_dict(again) == ar.config_to_dict(cfg)
    # start point is valid and usable
    tx = ar.apply_map(cfg.space, cfg.mapping, cfg.start)
    assert math.isfinite(ar.dist(cfg.space, cfg.start, tx))


def test_save_config_round_trips(tmp_path, km_config):
    out = tmp_path / "cfg.json"
    ar.save_config(km_config, out)
    assert ar.config_to_dict(ar.load_config(out)) == ar.config_to_dict(km_config)
    assert out.read_text().endswith("\n")


# ---------------------------------------------------------------------------
# angle parsing

@pytest.mark.parametrize("text,value", [
    ("pi", math.pi),
    ("-pi", -math.pi),
    ("pi/2", math.pi / 2),
    ("-pi/2", -math.pi / 2),
    ("3pi/4", 3 * math.pi / 4),
    ("2pi", 2 * math.pi),
    (" pi / 2 ", math.pi / 2),
    (1.25, 1.25),
    (-2, -2.0),
])
def test_parse_angle(text, value):
    assert ar.parse_angle(text, "config.mapping.angle") == pytest.approx(value, abs=0.0)


@pytest.mark.parametrize("bad", ["", "tau", "pi/0", "pi/2.5", "2*pi", None, []])
def test_parse_angle_rejects_garbage(bad):
    with pytest.raises(ar.ConfigError, match="config.mapping.angle"):
        ar.parse_angle(bad, "config.mapping.angle")


# ---------------------------------------------------------------------------
# structural errors, all path-annotated

def base_dict():
    return {
        "space": {"kind": "Euclidean", "dim": 2},
        "mapping": {"kind": "EuclideanRotation", "center": [0.0, 0.0],
                    "angle": "pi"},
        "start": [1.0, 0.0],
        "schedule": {"lambda": {"kind": "Constant", "value": "1/2"},
                     "s": {"kind": "Constant", "value": "0"},
                     "theta": {"kind": "ThetaLinear", "a": "4", "b": "0"},
                     "L": 1,
                     "gamma": {"kind": "GammaZero"}},
        "afp": {"b": 1.0, "fixed_point": [0.0, 0.0]},
        "eps_grid": [0.5, 0.25],
        "seed": 0,
    }


def test_base_dict_is_valid():
    cfg = ar.config_from_dict(base_dict())
    assert cfg.caps.max_steps == ar.DEFAULT_MAX_STEPS
    assert cfg.caps.report_every == 1
    assert cfg.seed == 0


def mutate(**patches):
    d = base_dict()
    for key, value in patches.items():
        parts = key.split("__")
        node = d
        for p in parts[:-1]:
            node = node[p]
        if value is ...:
            del node[parts[-1]]
        else:
            node[parts[-1]] = value
    return d


@pytest.mark.parametrize("patch,fragment", [
    ({"schedule__L": ...}, "config.schedule.L"),
    ({"space__kind": "Banach"}, "config.space.kind"),
    ({"space__dim": 0}, "config.space.dim"),
    ({"mapping__kind": "Mystery"}, "config.mapping.kind"),
    ({"mapping__angle": "tau"}, "config.mapping.angle"),
    ({"start": [1.0]}, "config.start"),
    ({"eps_grid": []}, "config.eps_grid"),
    ({"eps_grid": [0.5, -0.1]}, "config.eps_grid"),
    ({"afp__b": 0.0}, "config.afp.b"),
    ({"afp": ...}, "config.afp"),
    ({"schedule__lambda__value": "2"}, "lambda"),
    ({"seed": "abc"}, "config.seed"),
    ({"caps": {"max_steps": 0}}, "config.caps.max_steps"),
    ({"mapping__frobnicate": 1}, "frobnicate"),
])
def test_bad_config_errors_name_the_path(patch, fragment):
    with pytest.raises(ar.ConfigError, match=fragment):
        ar.config_from_dict(mutate(**patch))


def test_disk_requires_dim_two():
    with pytest.raises(ar.ConfigError, match="config.space.dim"):
        ar.config_from_dict(mutate(space={"kind": "PoincareDisk", "dim": 3},
                                   mapping={"kind": "PoincareRotation",
                                            "center": [0.0, 0.0],
                                            "angle": "pi"},
                                   start=[0.5, 0.0]))


def test_cross_model_mapping_rejected():
    with pytest.raises(ar.ConfigError, match="mapping"):
        ar.config_from_dict(mutate(space={"kind": "PoincareDisk", "dim": 2},
                                   start=[0.4, 0.0]))


def test_start_outside_disk_rejected():
    with pytest.raises(ar.ConfigError, match="config.start"):
        ar.config_from_dict(mutate(space={"kind": "PoincareDisk", "dim": 2},
                                   mapping={"kind": "PoincareRotation",
                                            "center": [0.0, 0.0],
                                            "angle": "pi"},
                                   start=[1.5, 0.0]))


def test_start_outside_mapping_domain_rejected():
    d = mutate(mapping={"kind": "EuclideanRotation", "center": [0.0, 0.0],
                        "angle": "pi",
                        "domain": {"kind": "ClosedBall", "center": [0.0, 0.0],
                                   "radius": 0.5}})
    with pytest.raises(ar.ConfigError, match="config.start"):
        ar.config_from_dict(d)


def test_identity_requires_explicit_fixed_point():
    d = mutate(mapping={"kind": "Identity"}, afp={"b": 1.0})
    with pytest.raises(ar.ConfigError, match="fixed point"):
        ar.config_from_dict(d)
    d = mutate(mapping={"kind": "Identity"},
               afp={"b": 1.0, "fixed_point": [1.0, 0.0]})
    cfg = ar.config_from_dict(d)
    assert cfg.afp.fixed_point.coords == (1.0, 0.0)


def test_fixed_point_defaults_to_mapping_declaration():
    d = mutate(afp={"b": 1.0})
    cfg = ar.config_from_dict(d)
    assert cfg.afp.fixed_point.coords == (0.0, 0.0)


def test_fixed_point_farther_than_b_rejected():
    d = mutate(afp={"b": 0.5, "fixed_point": [0.0, 0.0]})
    with pytest.raises(ar.ConfigError, match="beyond b"):
        ar.config_from_dict(d)


def test_modulus_field_accepts_descriptor():
    d = mutate(space={"kind": "Euclidean", "dim": 2,
                      "modulus": {"kind": "EtaHilbert"}})
    cfg = ar.config_from_dict(d)
    assert cfg.space.modulus.kind == "EtaHilbert"


def test_loads_config_rejects_bad_json():
    with pytest.raises(ar.ConfigError, match="JSON"):
        ar.loads_config("{not json")


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ar.ConfigError, match="cannot read config"):
        ar.load_config(tmp_path / "nope.json")


def test_top_level_unknown_key_rejected():
    d = base_dict()
    d["extra"] = 1
    with pytest.raises(ar.ConfigError, match="extra"):
        ar.config_from_dict(d)
