"""Task runner: executes manifest tasks and collects verdict reports.

Used both by the command line front-end and by the acceptance test suite, so
that `germlift paper-suite` and `pytest tests/test_acceptance.py` exercise
exactly the same checks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .derlog import (
    AugmentationSpec,
    augment_field,
    augment_field_div,
    augment_unfolding,
    derlog_strict,
    derlog_tangent,
    descend_field,
    discriminant,
    euler_field,
    last_component_ideal,
    tangency_quotient,
)
from .errors import GermliftError, GroebnerTimeout
from .exprio import parse_poly, print_poly
from .germs import VectorField, push_forward
from .groebner import Budget, contains, module_equal
from .lifting import is_liftable, lift_from_unfolding, restrict_field, restrictable_fields, origin_span
from .manifest import Manifest, load_manifest
from .modules import ModuleElement, Submodule, proportional
from .poly import Polynomial, VarSet

PASS = "PASS"
FAIL = "FAIL"
TIMEOUT = "TIMEOUT"
UNDECIDED_LOCAL = "UNDECIDED_LOCAL"

REPORT_SCHEMA = "germlift-report/1"

BUNDLED_FIXTURES = (
    "hk.manifest.json",
    "hk_k3.manifest.json",
    "hk_k4.manifest.json",
    "hk_k5.manifest.json",
    "augment.manifest.json",
)


@dataclass
class Report:
    task_id: str
    verdict: str
    details: list = field(default_factory=list)
    certificates: list = field(default_factory=list)
    counters: dict = field(default_factory=dict)

    def line(self) -> str:
        extra = f"  ({'; '.join(self.details)})" if self.details else ""
        return f"{self.verdict:<16} {self.task_id}{extra}"

    def to_json(self) -> dict:
        return {
            "id": self.task_id,
            "verdict": self.verdict,
            "details": list(self.details),
            "certificates": self.certificates,
            "counters": self.counters,
        }


def _field_str(f) -> str:
    return "(" + ", ".join(print_poly(p) for p in f.entries) + ")"


def _reringed_ideal(I: Submodule) -> Submodule:
    plain = VarSet(I.ring.names)
    gens = [
        ModuleElement(plain, [Polynomial(plain, g.entries[0].terms)])
        for g in I.generators
    ]
    return Submodule(plain, 1, gens)


def _ideals_equal(I: Submodule, J: Submodule, budget) -> bool:
    return module_equal(_reringed_ideal(I), _reringed_ideal(J), budget)


def _run_lift_check(m: Manifest, task, budget) -> Report:
    germ = m.maps[task["map"]]
    table = m.fields[task["fields"]]
    expect = task["expect"]
    details, certs = [], []
    verdict = PASS
    for i, eta in enumerate(table.fields):
        res = is_liftable(germ, eta, budget)
        if expect == "certified":
            if res.certified:
                certs.append(
                    {"field": _field_str(eta), "witness": _field_str(res.certificate.xi)}
                )
            else:
                if res.conclusive or verdict == FAIL:
                    verdict = FAIL
                else:
                    verdict = UNDECIDED_LOCAL
                details.append(f"generator {i} not polynomially liftable")
                certs.append(
                    {"field": _field_str(eta), "obstruction": str(res.obstruction)}
                )
        else:  # expect == "obstructed"
            if res.certified:
                verdict = FAIL
                details.append(f"generator {i} unexpectedly liftable")
                certs.append(
                    {"field": _field_str(eta), "witness": _field_str(res.certificate.xi)}
                )
            else:
                if not res.conclusive and verdict == PASS:
                    verdict = UNDECIDED_LOCAL
                certs.append(
                    {"field": _field_str(eta), "obstruction": str(res.obstruction)}
                )
    if verdict == PASS:
        details.append(f"{len(table.fields)}/{len(table.fields)} as expected")
    return Report(task["id"], verdict, details, certs)


def _run_transport(m: Manifest, task, budget) -> Report:
    H = m.maps[task["map"]]
    H_inv = m.maps[task["inverse"]]
    src = m.fields[task["fields"]]
    exp = m.fields[task["expect"]]
    if len(src.fields) != len(exp.fields):
        return Report(task["id"], FAIL, ["table sizes differ"])
    bad = []
    for i, (eta, want) in enumerate(zip(src.fields, exp.fields)):
        got = push_forward(eta, H, H_inv)
        if got != want:
            bad.append(i)
    if bad:
        return Report(task["id"], FAIL, [f"mismatch at indices {bad}"])
    return Report(
        task["id"], PASS, [f"{len(src.fields)} fields transported, term-for-term"]
    )


def _run_project_combinations(m: Manifest, task, budget) -> Report:
    U = m.unfoldings[task["unfolding"]]
    table = m.fields[task["fields"]]
    exp = m.fields[task["expect"]]
    ring = table.ring
    G = restrictable_fields(U)
    scalars = []
    details = []
    for i, combo in enumerate(task["combinations"]):
        acc = ModuleElement.zero(ring, len(ring))
        for coef_text, idx in combo:
            coef = parse_poly(coef_text, ring)
            acc = acc + table.fields[idx].as_element().scale(coef)
        if not contains(G, acc, budget):
            return Report(
                task["id"], FAIL,
                [f"combination {i} has parameter components off the constraint module"],
            )
        proj = restrict_field(VectorField.from_element(acc), U)
        sc = proportional(proj.as_element(), exp.fields[i].as_element())
        if sc is None or sc == 0:
            return Report(
                task["id"], FAIL,
                [f"combination {i} does not project to a scalar multiple"],
            )
        scalars.append(sc)
    details.append("scalars " + ", ".join(str(s) for s in scalars))
    certs = [{"combination": i, "scalar": str(s)} for i, s in enumerate(scalars)]
    return Report(task["id"], PASS, details, certs)


def _witness_certs(module: Submodule, germ, budget):
    certs = []
    for g in module.generators:
        res = is_liftable(germ, VectorField.from_element(g), budget)
        certs.append(
            {"field": str(g), "witness": _field_str(res.certificate.xi)}
            if res.certified
            else {"field": str(g), "obstruction": str(res.obstruction)}
        )
    return certs


def _run_pipeline(m: Manifest, task, budget) -> Report:
    U = m.unfoldings[task["unfolding"]]
    lift_total = m.fields[task["fields"]].as_submodule()
    out = lift_from_unfolding(U, lift_total, budget)
    certs = _witness_certs(out, U.core, budget)
    if "expect" in task:
        exp = m.fields[task["expect"]].as_submodule()
        if not module_equal(out, exp, budget):
            return Report(task["id"], FAIL, ["module differs from expected table"], certs)
        return Report(
            task["id"], PASS,
            [f"{len(out.generators)} generators; equality both directions"], certs,
        )
    return Report(task["id"], PASS, [f"{len(out.generators)} generators"], certs)


def _run_pipeline_vs_derlog(m: Manifest, task, budget) -> Report:
    U = m.unfoldings[task["unfolding"]]
    lift_total = m.fields[task["fields"]].as_submodule()
    out = lift_from_unfolding(U, lift_total, budget)
    certs = _witness_certs(out, U.core, budget)
    D = m.divisors[task["divisor"]]
    expected = derlog_tangent(D, budget).module
    if not module_equal(out, expected, budget):
        return Report(task["id"], FAIL, ["pipeline and derlog modules differ"], certs)
    return Report(
        task["id"], PASS,
        [f"pipeline and derlog agree ({len(out.generators)} generators)"], certs,
    )


def _poly_proportional(a: Polynomial, b: Polynomial):
    return proportional(
        ModuleElement(a.ring, [a]), ModuleElement(b.ring, [b])
    )


def _run_discriminant(m: Manifest, task, budget) -> Report:
    germ = m.maps[task["map"]]
    D = discriminant(germ, budget)
    want = m.divisors[task["expect_divisor"]]
    got = Polynomial(want.ring, D.h.terms) if D.ring.names == want.ring.names else D.h
    sc = _poly_proportional(got, want.h)
    if sc is None:
        return Report(task["id"], FAIL, ["defining equation differs"],
                      [{"computed": print_poly(D.h)}])
    return Report(task["id"], PASS, [f"equation matches (scalar {sc})"],
                  [{"computed": print_poly(D.h)}])


def _run_derlog(m: Manifest, task, budget) -> Report:
    D = m.divisors[task["divisor"]]
    if task["mode"] == "strict":
        module = derlog_strict(D, budget)
        certs = [{"field": str(g), "quotient": "0"} for g in module.generators]
    else:
        tf = derlog_tangent(D, budget)
        module = tf.module
        certs = [
            {"field": str(g), "quotient": print_poly(a)}
            for g, a in zip(module.generators, tf.quotients)
        ]
    if task.get("expect") is None:
        return Report(task["id"], PASS, [f"{len(module.generators)} generators"], certs)
    exp = m.fields[task["expect"]].as_submodule()
    if not module_equal(module, exp, budget):
        return Report(task["id"], FAIL, ["module differs from expected table"], certs)
    return Report(
        task["id"], PASS,
        [f"{len(module.generators)} generators; equality both directions"], certs,
    )


def _run_euler(m: Manifest, task, budget) -> Report:
    D = m.divisors[task["divisor"]]
    w = D.effective_weights()
    e = euler_field(D.ring, w)
    d = int(task["degree"])
    if e.apply_to(D.h) != D.h * d:
        return Report(task["id"], FAIL, [f"e(h) != {d}*h"])
    details = [f"e(h) = {d}*h"]
    if "expect" in task:
        want = m.fields[task["expect"]].fields[0]
        if e != want:
            return Report(task["id"], FAIL, ["Euler field differs from table"])
        details.append("field matches table")
    return Report(task["id"], PASS, details)


def _augmentation_parts(m: Manifest, task):
    aug = m.augmentations[task["augmentation"]]
    k = int(task["k"])
    if k not in aug.instances:
        raise GermliftError(f"no instance k={k} for augmentation")
    return aug, k, aug.instances[k]


def _combo_field(aug, combo) -> VectorField:
    ring = aug.lift_fields.ring
    acc = ModuleElement.zero(ring, len(ring))
    for coef, idx in combo:
        acc = acc + aug.lift_fields.fields[idx].as_element().scale(coef)
    return VectorField.from_element(acc)


def _run_augment_tilde(m: Manifest, task, budget) -> Report:
    aug, k, inst = _augmentation_parts(m, task)
    certs = []
    for i, (kind, combo) in enumerate(inst.recipes):
        base = _combo_field(aug, combo)
        if kind == "map":
            got = augment_field(base, k, into=inst.ring)
        else:
            got = augment_field_div(base, k, into=inst.ring)
        want = inst.tilde_fields.fields[i]
        if got != want:
            return Report(task["id"], FAIL, [f"transform {i} differs from table"])
        q = tangency_quotient(want, inst.divisor.h)
        if q is None:
            return Report(task["id"], FAIL, [f"field {i} not tangent to the divisor"])
        certs.append({"field": _field_str(want), "quotient": print_poly(q)})
    return Report(
        task["id"], PASS,
        [f"{len(inst.recipes)} transforms reproduce the table; all tangent"], certs,
    )


def _run_augment_pi2(m: Manifest, task, budget) -> Report:
    aug, k, inst = _augmentation_parts(m, task)
    lift_aug = derlog_tangent(inst.divisor, budget).module
    lift_unf = derlog_tangent(aug.discriminant, budget).module
    I_aug = last_component_ideal(lift_aug)
    I_unf = last_component_ideal(lift_unf)
    if not _ideals_equal(I_aug, I_unf, budget):
        return Report(task["id"], FAIL, ["restricted ideals differ"])
    # the same ideals recomputed from the listed generator tables must agree
    I_aug_table = last_component_ideal(inst.tilde_fields.as_submodule())
    I_unf_table = last_component_ideal(aug.lift_fields.as_submodule())
    if not _ideals_equal(I_aug, I_aug_table, budget) or not _ideals_equal(
        I_unf, I_unf_table, budget
    ):
        return Report(task["id"], FAIL,
                      ["computed and table-derived ideals differ"])
    if task.get("expect_ideal"):
        plain = VarSet(I_aug.ring.names)
        expect = Submodule.ideal(
            plain, [parse_poly(t, plain) for t in task["expect_ideal"]]
        )
        if not module_equal(_reringed_ideal(I_aug), expect, budget):
            return Report(task["id"], FAIL, ["ideal differs from the expected one"])
    gens = sorted(print_poly(g.entries[0]) for g in I_aug.generators)
    return Report(
        task["id"], PASS,
        ["ideals equal, both computed from tangency modules"],
        [{"ideal": gens}],
    )


def _run_augment_descend(m: Manifest, task, budget) -> Report:
    aug, k, inst = _augmentation_parts(m, task)
    certs = []
    for i, (kind, combo) in enumerate(inst.recipes):
        eta_bar = inst.tilde_fields.fields[i]
        res = descend_field(eta_bar, k, aug.discriminant)
        want = _combo_field(aug, combo)
        if res.field != want:
            return Report(
                task["id"], FAIL, [f"descent {i} does not recover its preimage"]
            )
        certs.append(
            {
                "field": _field_str(res.field),
                "quotient": print_poly(res.quotient),
                "discarded": _field_str(res.discarded),
            }
        )
    return Report(
        task["id"], PASS,
        [f"{len(inst.recipes)} descents recover their preimages exactly"], certs,
    )


def _run_augment_tau(m: Manifest, task, budget) -> Report:
    aug, k, inst = _augmentation_parts(m, task)
    spec = AugmentationSpec(aug.unfolding.core, aug.unfolding, k)
    AF = augment_unfolding(spec)
    table = m.fields[task["field"]]
    if table.ring.names != AF.total.target.names:
        return Report(task["id"], FAIL, ["field ring does not match the unfolded target"])
    eta = VectorField(
        AF.total.target,
        [Polynomial(AF.total.target, p.terms) for p in table.fields[0].entries],
    )
    res = is_liftable(AF.total, eta, budget)
    if not res.certified:
        return Report(task["id"], FAIL, ["trivial direction not certified liftable"])
    span = origin_span(Submodule(AF.total.target, AF.total.p, [eta.as_element()]))
    z_idx = AF.total.target.index(aug.unfolding.target_params[0])
    unit = tuple(1 if i == z_idx else 0 for i in range(AF.total.p))
    if unit not in [tuple(row) for row in span]:
        return Report(task["id"], FAIL, ["evaluation span misses the parameter direction"])
    return Report(
        task["id"], PASS,
        ["parameter direction is in the isosingular tangent space"],
        [{"field": _field_str(eta), "witness": _field_str(res.certificate.xi)}],
    )


def _run_tau_zero(m: Manifest, task, budget) -> Report:
    table = m.fields[task["fields"]]
    span = origin_span(table.as_submodule())
    if span:
        return Report(task["id"], FAIL, [f"span has dimension {len(span)}"])
    return Report(task["id"], PASS, ["all generators vanish at the origin"])


def _run_note(m: Manifest, task, budget) -> Report:
    return Report(task["id"], PASS, [task["text"]])


_RUNNERS = {
    "lift_check": _run_lift_check,
    "transport_table": _run_transport,
    "project_combinations": _run_project_combinations,
    "pipeline": _run_pipeline,
    "pipeline_vs_derlog": _run_pipeline_vs_derlog,
    "discriminant": _run_discriminant,
    "derlog": _run_derlog,
    "euler": _run_euler,
    "augment_tilde": _run_augment_tilde,
    "augment_pi2": _run_augment_pi2,
    "augment_descend": _run_augment_descend,
    "augment_tau": _run_augment_tau,
    "tau_zero": _run_tau_zero,
    "note": _run_note,
}


def run_task(m: Manifest, task: dict, budget: Budget | None = None) -> Report:
    from .errors import InputNotLiftable, OutputNotCertified

    budget = budget if budget is not None else Budget()
    try:
        report = _RUNNERS[task["op"]](m, task, budget)
    except GroebnerTimeout as e:
        return Report(task["id"], TIMEOUT, [str(e)], counters=e.stats)
    except (InputNotLiftable, OutputNotCertified) as e:
        return Report(task["id"], FAIL, [str(e)], counters=budget.stats())
    except GermliftError as e:
        return Report(task["id"], FAIL, [f"{type(e).__name__}: {e}"],
                      counters=budget.stats())
    report.counters = budget.stats()
    return report


def run_manifest(m: Manifest, only: str | None = None,
                 budget_factory=None) -> list[Report]:
    reports = []
    for task in m.tasks:
        if only and not task["id"].startswith(only):
            continue
        budget = budget_factory() if budget_factory else None
        reports.append(run_task(m, task, budget))
    return reports


def bundled_manifests() -> list[Manifest]:
    out = []
    for name in BUNDLED_FIXTURES:
        path = resources.files("germlift.fixtures").joinpath(name)
        out.append(load_manifest(path))
    return out


def instance_note() -> Report:
    return Report(
        "scale.family_instances",
        PASS,
        [
            "family-level claims are checked at the instances k=2,3,4,5 "
            "(and k=1,2,3 for augmentations); a single symbolic-k computation "
            "is out of scope by design"
        ],
    )


def run_paper_suite(extra_manifests=(), only: str | None = None,
                    budget_factory=None) -> list[Report]:
    reports = []
    for m in list(bundled_manifests()) + list(extra_manifests):
        reports.extend(run_manifest(m, only, budget_factory))
    if only is None or "scale".startswith(only) or only.startswith("scale"):
        reports.append(instance_note())
    return reports


def reports_to_json(reports: list[Report]) -> str:
    doc = {
        "schema": REPORT_SCHEMA,
        "results": [r.to_json() for r in reports],
        "summary": {
            "total": len(reports),
            "pass": sum(1 for r in reports if r.verdict == PASS),
            "fail": sum(1 for r in reports if r.verdict == FAIL),
            "timeout": sum(1 for r in reports if r.verdict == TIMEOUT),
            "undecided_local": sum(1 for r in reports if r.verdict == UNDECIDED_LOCAL),
        },
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def exit_code(reports: list[Report]) -> int:
    if any(r.verdict in (FAIL, UNDECIDED_LOCAL) for r in reports):
        return 2
    if any(r.verdict == TIMEOUT for r in reports):
        return 3
    return 0
