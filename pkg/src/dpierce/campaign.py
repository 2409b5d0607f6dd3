"""Verification campaigns: batches of instances checked against bound kinds.

A campaign config is one JSON document:

    {
      "campaigns": [
        {
          "name": "pp-bounds",
          "kinds": ["DPP_STAR", "DPP_TAU", "ALON"],
          "p": 2, "q": 2,
          "source": {
            "generator": "planted_intervals",
            "count": 100, "seed": 1,
            "n_edges": 10, "d": 2, "coord_denominator": 4,
            "host_size": 10, "width": 1
          }
        },
        {"name": "from-files", "kinds": ["GALLAI"],
         "source": {"files": ["inst1.json", "inst2.json"]}}
      ]
    }

Generators: random_intervals, planted_intervals, random_subforests,
planted_subforests, tw, projective (the latter takes "dimension" and
"field_order" instead of count/seed).  Instance i of a counted source uses
seed + i.  The aggregate report records pass/fail tallies, the largest
measured/bound ratio per kind (tightness telemetry), and total runtime;
any unsatisfied applicable report makes the exit status 1 and embeds the
full instance for replay.
"""

from __future__ import annotations

import json
import time
from mpmath import mpf

from .bounds import BoundKind, BoundReport, verify_bundle, _exact_to_mpf, _fmt
from .generators import (
    GenConfig,
    ProjectiveParams,
    planted_pq_family,
    planted_pq_subforests,
    projective_instance,
    random_d_intervals,
    random_subforests,
    random_tree,
    random_tw_graph,
)
from .instance_io import load_instance, to_json_dict
from .model import PQParameters


class CampaignConfigError(ValueError):
    """Malformed campaign configuration."""


_STAR = {BoundKind.DPP_STAR, BoundKind.DPQ_STAR, BoundKind.TREE_PP_STAR}


def _cfg_int(spec: dict, key: str, default: int | None = None) -> int:
    value = spec.get(key, default)
    if not isinstance(value, int) or isinstance(value, bool):
        raise CampaignConfigError(f"source.{key}: expected an integer, got {value!r}")
    return value


def _instances(spec: dict, params: PQParameters | None):
    """Yield (seed, family) pairs for one campaign source."""
    if "files" in spec:
        for path in spec["files"]:
            yield 0, load_instance(path)
        return
    generator = spec.get("generator")
    if generator == "projective":
        p = ProjectiveParams(
            dimension=_cfg_int(spec, "dimension"),
            field_order=_cfg_int(spec, "field_order"),
        )
        yield 0, projective_instance(p).realization
        return
    count = _cfg_int(spec, "count")
    base_seed = _cfg_int(spec, "seed")
    for i in range(count):
        cfg = GenConfig(
            seed=base_seed + i,
            n_edges=_cfg_int(spec, "n_edges", 8),
            d=_cfg_int(spec, "d", 2),
            coord_denominator=_cfg_int(spec, "coord_denominator", 4),
            host_size=_cfg_int(spec, "host_size", 10),
        )
        if generator == "random_intervals":
            yield cfg.seed, random_d_intervals(cfg)
        elif generator == "planted_intervals":
            if params is None:
                raise CampaignConfigError("planted_intervals needs p and q")
            yield cfg.seed, planted_pq_family(cfg, params)
        elif generator == "random_subforests":
            yield cfg.seed, random_subforests(random_tree(cfg), cfg)
        elif generator == "planted_subforests":
            if params is None:
                raise CampaignConfigError("planted_subforests needs p and q")
            yield cfg.seed, planted_pq_subforests(cfg, params)
        elif generator == "tw":
            yield cfg.seed, random_tw_graph(cfg, _cfg_int(spec, "width", 1))
        else:
            raise CampaignConfigError(f"unknown generator {generator!r}")


def run_campaign(config: dict) -> tuple[dict, int]:
    """Run every campaign in `config`; returns (report, exit_code).

    exit_code is 1 when any applicable report is unsatisfied, else 0.
    """
    if not isinstance(config, dict) or "campaigns" not in config:
        raise CampaignConfigError('config must be an object with a "campaigns" array')
    t0 = time.perf_counter()
    campaign_reports = []
    any_violated = False

    for idx, camp in enumerate(config["campaigns"]):
        if not isinstance(camp, dict):
            raise CampaignConfigError(f"campaigns[{idx}]: expected an object")
        name = camp.get("name", f"campaign-{idx}")
        try:
            kinds = [BoundKind(k) for k in camp["kinds"]]
        except (KeyError, ValueError) as exc:
            raise CampaignConfigError(f"campaigns[{idx}].kinds: {exc}") from None
        params = None
        if "p" in camp or "q" in camp:
            try:
                params = PQParameters(p=camp["p"], q=camp.get("q", camp["p"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise CampaignConfigError(f"campaigns[{idx}]: bad p/q: {exc}") from None
        source = camp.get("source")
        if not isinstance(source, dict):
            raise CampaignConfigError(f"campaigns[{idx}].source: expected an object")

        t_camp = time.perf_counter()
        reports: list[tuple[BoundReport, object]] = []
        for seed, family in _instances(source, params):
            for report in verify_bundle(family, kinds, params=params, seed=seed):
                reports.append((report, family))

        reports.sort(key=lambda rf: (rf[0].seed, rf[0].kind.value))
        tallies = {"applicable": 0, "satisfied": 0, "unsatisfied": 0, "inapplicable": 0}
        max_ratio: dict[str, mpf] = {}
        entries = []
        for report, family in reports:
            entry = report.to_json_dict()
            if not report.applicable:
                tallies["inapplicable"] += 1
            else:
                tallies["applicable"] += 1
                if report.satisfied:
                    tallies["satisfied"] += 1
                else:
                    tallies["unsatisfied"] += 1
                    any_violated = True
                    entry["instance"] = to_json_dict(family)  # full replay payload
                bound = mpf(report.bound_value)
                if bound > 0:
                    measured = (
                        _exact_to_mpf(report.tau_star)
                        if report.kind in _STAR
                        else mpf(report.tau)
                    )
                    ratio = measured / bound
                    key = report.kind.value
                    if key not in max_ratio or ratio > max_ratio[key]:
                        max_ratio[key] = ratio
            entries.append(entry)

        campaign_reports.append(
            {
                "name": name,
                "kinds": [k.value for k in kinds],
                "reports": entries,
                "tallies": tallies,
                "max_measured_over_bound": {k: _fmt(v) for k, v in sorted(max_ratio.items())},
                "runtime_seconds": round(time.perf_counter() - t_camp, 3),
            }
        )

    report = {
        "campaigns": campaign_reports,
        "total_runtime_seconds": round(time.perf_counter() - t0, 3),
        "all_satisfied": not any_violated,
    }
    return report, (1 if any_violated else 0)


def run_campaign_file(path) -> tuple[dict, int]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            config = json.load(fh)
    except json.JSONDecodeError as exc:
        raise CampaignConfigError(f"invalid JSON: {exc}") from None
    return run_campaign(config)
