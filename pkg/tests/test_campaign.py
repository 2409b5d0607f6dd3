import pytest

import dpierce.campaign as campaign_mod
from dpierce import (
    CampaignConfigError,
    GenConfig,
    dump_instance,
    random_d_intervals,
    run_campaign,
)


def test_empty_config():
    report, code = run_campaign({"campaigns": []})
    assert code == 0
    assert report["campaigns"] == []
    assert report["all_satisfied"] is True


def test_planted_campaign_all_satisfied():
    report, code = run_campaign(
        {
            "campaigns": [
                {
                    "name": "t1",
                    "kinds": ["DPP_STAR", "DPP_TAU", "ALON"],
                    "p": 2,
                    "q": 2,
                    "source": {
                        "generator": "planted_intervals",
                        "count": 6,
                        "seed": 10,
                        "n_edges": 8,
                        "d": 2,
                    },
                }
            ]
        }
    )
    assert code == 0
    camp = report["campaigns"][0]
    assert camp["tallies"] == {
        "applicable": 18,
        "satisfied": 18,
        "unsatisfied": 0,
        "inapplicable": 0,
    }
    assert "DPP_STAR" in camp["max_measured_over_bound"]
    # reports are sorted by (seed, kind)
    seeds = [r["seed"] for r in camp["reports"]]
    assert seeds == sorted(seeds)


def test_zero_instances_exit_zero():
    report, code = run_campaign(
        {
            "campaigns": [
                {
                    "name": "empty",
                    "kinds": ["GALLAI"],
                    "source": {"generator": "random_intervals", "count": 0, "seed": 1},
                }
            ]
        }
    )
    assert code == 0
    assert report["campaigns"][0]["reports"] == []
    assert report["campaigns"][0]["tallies"]["applicable"] == 0


def test_files_source(tmp_path):
    f = random_d_intervals(GenConfig(seed=2, n_edges=7, d=1))
    path = tmp_path / "inst.json"
    dump_instance(f, path)
    report, code = run_campaign(
        {
            "campaigns": [
                {
                    "name": "gallai",
                    "kinds": ["GALLAI"],
                    "source": {"files": [str(path)]},
                }
            ]
        }
    )
    assert code == 0
    assert report["campaigns"][0]["tallies"]["satisfied"] == 1


def test_tw_campaign():
    report, code = run_campaign(
        {
            "campaigns": [
                {
                    "name": "tw",
                    "kinds": ["TW_TAU"],
                    "p": 2,
                    "q": 2,
                    "source": {
                        "generator": "tw",
                        "count": 5,
                        "seed": 3,
                        "n_edges": 6,
                        "d": 2,
                        "host_size": 6,
                        "width": 2,
                    },
                }
            ]
        }
    )
    assert code == 0
    tallies = report["campaigns"][0]["tallies"]
    assert tallies["unsatisfied"] == 0
    assert tallies["applicable"] + tallies["inapplicable"] == 5


def test_config_errors():
    with pytest.raises(CampaignConfigError):
        run_campaign({"no": "campaigns"})
    with pytest.raises(CampaignConfigError):
        run_campaign({"campaigns": [{"kinds": ["NOPE"], "source": {}}]})
    with pytest.raises(CampaignConfigError):
        run_campaign(
            {"campaigns": [{"kinds": ["ALON"], "source": {"generator": "warp"}}]}
        )
    with pytest.raises(CampaignConfigError):
        run_campaign(
            {
                "campaigns": [
                    {
                        "kinds": ["DPP_STAR"],
                        "p": 2,
                        "source": {"generator": "planted_intervals", "count": "x", "seed": 0},
                    }
                ]
            }
        )
    with pytest.raises(CampaignConfigError):
        run_campaign(
            {
                "campaigns": [
                    {
                        "kinds": ["DPP_STAR"],
                        "q": 2,  # q without p
                        "source": {"generator": "planted_intervals", "count": 1, "seed": 0},
                    }
                ]
            }
        )


def test_violation_reporting_and_exit_code(monkeypatch):
    # the checked bounds all hold, so force an unsatisfied report to exercise the
    # failure path: exit code 1 and an embedded instance for replay
    real = campaign_mod.verify_bundle

    def sabotage(family, kinds, params=None, k=None, seed=0):
        reports = real(family, kinds, params=params, k=k, seed=seed)
        out = []
        for r in reports:
            out.append(
                campaign_mod.BoundReport(
                    **{
                        **r.__dict__,
                        "satisfied": False if r.applicable else None,
                    }
                )
            )
        return out

    monkeypatch.setattr(campaign_mod, "verify_bundle", sabotage)
    report, code = run_campaign(
        {
            "campaigns": [
                {
                    "name": "sab",
                    "kinds": ["GALLAI"],
                    "source": {
                        "generator": "random_intervals",
                        "count": 2,
                        "seed": 5,
                        "n_edges": 5,
                        "d": 1,
                    },
                }
            ]
        }
    )
    assert code == 1
    assert report["all_satisfied"] is False
    failing = [r for r in report["campaigns"][0]["reports"] if r["satisfied"] is False]
    assert failing and all("instance" in r for r in failing)
    # the embedded instance is a loadable replay payload
    from dpierce import from_json_dict

    from_json_dict(failing[0]["instance"])


def test_projective_source():
    report, code = run_campaign(
        {
            "campaigns": [
                {
                    "name": "fano",
                    "kinds": ["DPP_STAR", "ALON"],
                    "p": 2,
                    "q": 2,
                    "source": {"generator": "projective", "dimension": 2, "field_order": 2},
                }
            ]
        }
    )
    assert code == 0
    assert report["campaigns"][0]["tallies"]["satisfied"] == 2
