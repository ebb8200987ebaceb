"""
Main Orchestrator for Ulrich Certify.
Loads configuration, runs one check per command (or every corpus entry) and
compiles the results into reports.
"""

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from loguru import logger

from algebra.cyclotomic import curve_numerator, cyclotomic_product_test
from algebra.errors import AlgebraError, PreconditionError
from algebra.graded import (
    MULTIPLICITY_CAVEATS,
    RingPresentation,
    component_basis,
    generated_in_degrees,
    hilbert_series,
    is_complete_intersection,
    krull_dim,
    multiplication_image,
    quotient_length,
    strict_complete_intersection_test,
    truncation_power_check,
)
from algebra.groebner import IdealPresentation, configure_budget, ideal_equal, kernel_of_ring_map
from algebra.hilbert import INFINITE
from algebra.polytope import irreducibility_verdict
from algebra.rees import associated_graded, is_maximal_ideal, rees_presentation, regrading_check, verify_surjection
from algebra.rings import PolynomialRing
from checker import FAILED, VerdictConfig, check_section_ring_certificate, check_surjectivity_condition, ulrich_verdict
from corpus import CorpusEntry, CorpusError, EntryOutcome, load_manifest, outcome
from presentation import LoadedPresentation, load_presentation
from report import EXIT_FAILED, EXIT_OK, STATUS_BY_EXIT, Report, Timing, inputs_digest
from settings import Settings, load_settings

CheckResult = Tuple[Dict[str, Any], int]

COMMANDS = (
    "hilbert", "dim", "ci-check", "length", "multiplicity", "surjectivity", "generation", "truncation",
    "section-cert", "newton", "kernel-verify", "cyclotomic", "rees", "gr", "verdict",
)


def _exit(ok: bool) -> int:
    return EXIT_OK if ok else EXIT_FAILED


def _texts(values: Optional[Union[str, Sequence[str]]]) -> List[str]:
    if values is None:
        return []
    if isinstance(values, str):
        return [v.strip() for v in values.split(",") if v.strip()]
    return [str(v) for v in values]


class Orchestrator:
    """
    Runs checks against presentation files and assembles reports.
    """

    def __init__(self, config_path: Optional[str] = None, settings: Optional[Settings] = None):
        """Initialize orchestrator with configuration."""
        self.settings = settings if settings is not None else load_settings(config_path)
        configure_budget(self.settings.budget.to_budget())
        self.execution_log: Dict[str, Any] = {"checks": [], "status": "idle"}

    # dispatch

    def handler(self, command: str) -> Callable[..., CheckResult]:
        if command not in COMMANDS:
            raise PreconditionError(f"unknown check '{command}'")
        return getattr(self, "check_" + command.replace("-", "_"))

    def execute(self, command: str, target: str, **args) -> CheckResult:
        logger.info(f"Executing {command} on {target}")
        results, code = self.handler(command)(target, **args)
        self.execution_log["checks"].append({"command": command, "target": target, "exit_code": code})
        return results, code

    def _load(self, target: str) -> LoadedPresentation:
        """A file with a ring map but no relation lines presents the image of that map."""
        loaded = load_presentation(target)
        ring = loaded.ring
        if not ring.relations and loaded.target is not None:
            kernel = kernel_of_ring_map(ring.ring, loaded.target, loaded.images)
            loaded.ring = RingPresentation(ring.ring, kernel.generators, name=ring.name)
            logger.info(f"{ring.name or target}: {len(kernel.generators)} relations from the ring map")
        return loaded

    # ring checks

    def check_hilbert(self, target: str, up_to: Optional[int] = None) -> CheckResult:
        ring = self._load(target).ring
        up_to = self.settings.defaults.hilbert_check_degree if up_to is None else up_to
        series = hilbert_series(ring)
        coefficients = series.coefficients(up_to)
        dims = [len(component_basis(ring, d)) for d in range(up_to + 1)]
        results = {
            "ring": ring.describe(),
            "series": str(series),
            "numerator": list(series.numerator),
            "denominator_weights": list(series.denominator),
            "krull_dim": series.pole_order(),
            "coefficients": coefficients,
            "component_dims_match": coefficients == dims,
        }
        return results, _exit(coefficients == dims)

    def check_dim(self, target: str) -> CheckResult:
        ring = self._load(target).ring
        return {"ring": ring.describe(), "krull_dim": krull_dim(ring)}, EXIT_OK

    def check_ci_check(self, target: str) -> CheckResult:
        witness = is_complete_intersection(self._load(target).ring)
        return witness.model_dump(), _exit(witness.complete_intersection)

    def check_length(self, target: str, extra: Optional[Union[str, List[str]]] = None) -> CheckResult:
        loaded = self._load(target)
        gens = _texts(extra) or [str(p) for p in loaded.params]
        if not gens:
            raise PreconditionError("length needs --extra generators or params in the presentation")
        length = quotient_length(loaded.ring, gens)
        shown = "infinite" if length == INFINITE else int(length)
        return {"ring": loaded.ring.describe(), "extra": gens, "length": shown}, EXIT_OK

    def check_multiplicity(self, target: str, params: Optional[Union[str, List[str]]] = None) -> CheckResult:
        loaded = self._load(target)
        texts = _texts(params) or [str(p) for p in loaded.params]
        strict = strict_complete_intersection_test(loaded.ring, [loaded.ring.parse(p) for p in texts])
        results = {
            "ring": loaded.ring.describe(),
            "params": texts,
            "multiplicity": strict.multiplicity,
            "relation_orders": strict.orders,
            "order_product": strict.order_product,
            "strict_complete_intersection": strict.strict,
            "caveats": MULTIPLICITY_CAVEATS,
        }
        return results, EXIT_OK

    def check_surjectivity(self, target: str, a: Optional[int] = None, j: Optional[int] = None,
                           j_max: Optional[int] = None) -> CheckResult:
        loaded = self._load(target)
        a = self.settings.defaults.a if a is None else a
        if j is not None:
            image = multiplication_image(loaded.ring, a, j)
            return image.model_dump(), _exit(image.surjective)
        j_max = self.settings.defaults.j_max if j_max is None else j_max
        report = check_surjectivity_condition(loaded.ring, a, j_max, loaded.module_gen_texts)
        return report.model_dump(), _exit(report.status != FAILED)

    def check_generation(self, target: str, lo: int = 2, hi: int = 3, up_to: Optional[int] = None) -> CheckResult:
        ring = self._load(target).ring
        up_to = self.settings.defaults.hilbert_check_degree if up_to is None else up_to
        report = generated_in_degrees(ring, lo, hi, up_to)
        return report.model_dump(), _exit(report.holds)

    def check_truncation(self, target: str, a: Optional[int] = None, j_max: Optional[int] = None) -> CheckResult:
        ring = self._load(target).ring
        a = self.settings.defaults.a if a is None else a
        j_max = self.settings.defaults.j_max if j_max is None else j_max
        report = truncation_power_check(ring, a, j_max)
        return report.model_dump(), _exit(report.holds)

    def check_section_cert(self, target: str) -> CheckResult:
        loaded = self._load(target)
        cert = loaded.section_cert
        if cert is None:
            raise PreconditionError(f"{target} has no 'params' line: nothing to certify")
        report = check_section_ring_certificate(loaded.ring, cert)
        return report.model_dump(), _exit(report.holds)

    def check_kernel_verify(self, target: str) -> CheckResult:
        loaded = self._load(target)
        if loaded.target is None:
            raise PreconditionError(f"{target} has no 'target' / 'image' lines")
        ring = loaded.ring
        kernel = kernel_of_ring_map(ring.ring, loaded.target, loaded.images)
        equal = ideal_equal(kernel, IdealPresentation(kernel.ring, ring.relations))
        results = {
            "ring": ring.describe(),
            "images": {name: str(p) for name, p in loaded.images.items()},
            "kernel": [str(g) for g in kernel.generators],
            "equal": equal,
        }
        return results, _exit(equal)

    def check_rees(self, target: str, expected: Optional[List[str]] = None) -> CheckResult:
        loaded = self._load(target)
        rees = rees_presentation(loaded.ring, loaded.ideal)
        results: Dict[str, Any] = {
            "ideal": [str(g) for g in loaded.ideal],
            "variables": rees.result.ring.table.describe(),
            "relations": [str(r) for r in rees.result.relations],
            "relations_vanish": rees.relations_vanish(),
        }
        ok = results["relations_vanish"]
        if expected is not None:
            wanted = IdealPresentation.of(rees.result.ring, expected)
            results["equal_to_expected"] = ideal_equal(rees.result.ideal, wanted)
            ok = ok and results["equal_to_expected"]
        return results, _exit(ok)

    def check_gr(self, target: str, method: str = "rees", expected: Optional[List[str]] = None,
                 vanish: Optional[List[str]] = None) -> CheckResult:
        loaded = self._load(target)
        base = loaded.ring
        gens = loaded.ideal or [base.ring.gen(n) for n in base.ring.names]
        gr = associated_graded(base, gens, method=method)
        results: Dict[str, Any] = {
            "method": method,
            "variables": gr.ring.table.describe(),
            "relations": [str(r) for r in gr.relations],
        }
        ok = True
        if is_maximal_ideal(base, gens):
            results["regrading_check"] = regrading_check(base, gens, gr)
            ok = results["regrading_check"]
        if expected is not None:
            results["equal_to_expected"] = ideal_equal(gr.ideal, IdealPresentation.of(gr.ring, expected))
            ok = ok and results["equal_to_expected"]
        if vanish:
            results["vanishing"] = verify_surjection(base, gens, gr, vanish)
            results["all_vanish"] = all(results["vanishing"].values())
            ok = ok and results["all_vanish"]
        return results, _exit(ok)

    def check_verdict(self, target: str, a: Optional[int] = None, j_max: Optional[int] = None,
                      acknowledge_assumptions: bool = False) -> CheckResult:
        loaded = self._load(target)
        config = VerdictConfig(
            a=self.settings.defaults.a if a is None else a,
            j_max=self.settings.defaults.j_max if j_max is None else j_max,
            module_gens=loaded.module_gen_texts,
            section_cert=loaded.section_cert,
            acknowledge_assumptions=acknowledge_assumptions,
        )
        verdict = ulrich_verdict(loaded.ring, config)
        return verdict.model_dump(), _exit(verdict.conclusion == "NoUlrichModules")

    # polynomial checks (the target is polynomial text)

    def check_newton(self, target: str, variables: str = "x,y", bound: Optional[int] = None) -> CheckResult:
        names = tuple(_texts(variables))
        if len(names) != 2:
            raise PreconditionError(f"newton needs exactly two variables, got {variables!r}")
        ring = PolynomialRing.of(", ".join(names))
        bound = self.settings.defaults.brute_force_bound if bound is None else bound
        verdict = irreducibility_verdict(ring.parse(target), names, bound)
        return verdict.model_dump(), _exit(verdict.status == "Irreducible")

    def check_cyclotomic(self, target: str, genus: Optional[int] = None) -> CheckResult:
        if genus is not None:
            witness = cyclotomic_product_test(curve_numerator(genus))
        else:
            witness = cyclotomic_product_test(PolynomialRing.of("t").parse(target))
        results = witness.model_dump()
        results["factorization"] = witness.factorization() if witness.holds else None
        return results, _exit(witness.holds)

    # corpus

    def _run_entry(self, entry: CorpusEntry, directory: Path) -> EntryOutcome:
        target = entry.target
        if entry.check not in ("newton", "cyclotomic"):
            target = str(directory / entry.target)
        if entry.experimental:
            logger.warning(f"Corpus entry {entry.id} is experimental")
        try:
            results, _ = self.execute(entry.check, target, **entry.args)
        except (AlgebraError, OSError, ValueError, TypeError) as e:
            raise CorpusError(f"corpus entry '{entry.id}': {e}") from e
        result = outcome(entry, json.loads(json.dumps(results, default=str)))
        if not result.passed:
            logger.warning(f"Corpus entry {entry.id} failed: {result.detail}")
        return result

    def run_corpus(self, manifest: Optional[str] = None, jobs: Optional[int] = None) -> CheckResult:
        """Every manifest entry, in manifest order; experimental entries never fail the run."""
        corpus = self.settings.corpus
        path = Path(manifest) if manifest else self.settings.resolve(corpus.directory) / corpus.manifest
        entries = load_manifest(path).entries
        jobs = jobs or corpus.jobs
        logger.info(f"Running {len(entries)} corpus entries with {jobs} jobs")
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(self._run_entry, e, path.parent) for e in entries]
            outcomes = [f.result() for f in futures]
        failed = [o.id for o in outcomes if not o.passed and not o.experimental]
        results = {
            "manifest": path.name,
            "total": len(outcomes),
            "passed": sum(o.passed for o in outcomes),
            "failed": failed,
            "entries": [o.model_dump() for o in outcomes],
        }
        return results, _exit(not failed)

    # reports

    def build_report(self, argv: Sequence[str], results: Dict[str, Any], exit_code: int,
                     files: Sequence[Path] = (), seconds: float = 0.0) -> Report:
        readable = [Path(f) for f in files if Path(f).is_file()]
        return Report(
            command=list(argv),
            inputs_digest=inputs_digest(argv, readable),
            results=json.loads(json.dumps(results, default=str)),
            status=STATUS_BY_EXIT.get(exit_code, "error"),
            exit_code=exit_code,
            timing=Timing(seconds=round(seconds, 6)),
        )

    def timed(self, run: Callable[[], CheckResult]) -> Tuple[Dict[str, Any], int, float]:
        start = time.perf_counter()
        results, code = run()
        return results, code, time.perf_counter() - start

    def save_results(self, report: Report, output_dir: Optional[str] = None) -> Path:
        """Save the report as JSON under the reports directory."""
        directory = Path(output_dir) if output_dir else self.settings.resolve(self.settings.output.reports_dir)
        os.makedirs(directory, exist_ok=True)
        name = report.command[0] if report.command else "report"
        path = directory / f"{name}.json"
        with open(path, "w", encoding="utf-8") as f:
            f.write(report.model_dump_json(indent=2))
        logger.info(f"Report saved to {path}")
        return path

