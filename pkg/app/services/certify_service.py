import asyncio
import random
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from contextlib import contextmanager
from inspect import signature
from itertools import combinations
from math import ceil
from pathlib import Path
from time import perf_counter
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import networkx as nx

from app.core.config import settings
from app.models.complex import SimplicialComplex
from app.models.matrix import IntegerMatrix
from app.models.polytope import AnnotatedComplex
from app.repositories.complex_repository import ComplexRepository
from app.repositories.manifest_repository import ManifestRepository
from app.schemas.homology import HomologyProfile
from app.schemas.report import RunManifest, VerificationReport
from app.services.balanced_service import BalancedService, balanced_coloring
from app.services.complex_service import ComplexService
from app.services.crosspoly_service import CrossPolytopeService, antipode_map, standard_coloring
from app.services.homology_service import HomologyService
from app.services.inductive_service import InductiveService
from app.services.isomorphism_service import IsomorphismService
from app.services.shelling_service import ShellingService
from app.services.verify_service import VerifyService
from app.utils.exceptions import (
    ConstructionInvariantException,
    CriterionFailedException,
    GluingException,
    HandleIllegalException,
    NotAPseudomanifoldException,
    NotAShellingException,
    SymmetryException,
    ValidationException,
)
from app.utils.helpers import vertex_key, x, y
from app.utils.validators import validate_dimension, validate_format

import logging

logger = logging.getLogger(__name__)

TARGETS = (
    "cross-polytope",
    "b-complex",
    "b-suite",
    "shelling",
    "cycle",
    "cs-product",
    "balanced-product",
    "inductive",
    "homology-engine",
)

# construction errors become failing reports; budget and cap errors propagate
CHECK_ERRORS = (
    ConstructionInvariantException,
    CriterionFailedException,
    GluingException,
    HandleIllegalException,
    NotAPseudomanifoldException,
    NotAShellingException,
    SymmetryException,
)


class RunRecorder:
    """Collects the reports, outputs and timings of one certify run"""

    def __init__(self, repository: ComplexRepository, fmt: str, jobs: int):
        self.repository = repository
        self.fmt = fmt
        self.jobs = jobs
        self.reports: List[VerificationReport] = []
        self.outputs: Dict[str, str] = {}
        self.timings: Dict[str, float] = {}
        self.prefix = ""

    @contextmanager
    def timed(self, name: str):
        start = perf_counter()
        try:
            yield
        finally:
            key = f"{self.prefix}{name}"
            self.timings[key] = round(self.timings.get(key, 0.0) + perf_counter() - start, 4)

    @contextmanager
    def scope(self, prefix: str):
        previous, self.prefix = self.prefix, f"{self.prefix}{prefix}."
        try:
            yield
        finally:
            self.prefix = previous

    def add(self, report: VerificationReport) -> VerificationReport:
        if self.prefix:
            report = report.model_copy(update={"check": f"{self.prefix}{report.check}"})
        self.reports.append(report)
        logger.debug(f"{report.check}: {'pass' if report.passed else 'FAIL'}")
        return report

    def expect(self, check: str, actual: Any, expected: Any) -> VerificationReport:
        passed = actual == expected
        return self.add(VerificationReport(
            check=check,
            passed=passed,
            witness=None if passed else {"actual": actual, "expected": expected},
            metrics={"value": actual},
        ))

    def homology(self, check: str, complex_: SimplicialComplex, expected: HomologyProfile) -> HomologyProfile:
        """Reduced homology against an expected profile, plus Euler consistency"""
        with self.timed(check):
            profile = HomologyService.reduced_homology(complex_)
        passed = profile.same_groups(expected) and profile.is_torsion_free
        self.add(VerificationReport(
            check=check,
            passed=passed,
            witness=None if passed else {"found": profile.lines(), "expected": expected.lines()},
            metrics={"betti": profile.betti},
        ))
        self.expect(f"{check}_euler", complex_.f_vector().euler_characteristic, profile.euler_characteristic)
        return profile

    def isomorphic(self, check: str, first: SimplicialComplex, second: SimplicialComplex) -> None:
        with self.timed(check):
            found = IsomorphismService().find_isomorphism(first, second)
        self.add(VerificationReport(
            check=check,
            passed=found is not None,
            witness=None if found is not None else {"first": first.name, "second": second.name},
            metrics={"map": found.mapping} if found is not None else {},
        ))

    def save(self, annotated: AnnotatedComplex, name: str) -> Path:
        path = self.repository.save(annotated, self.fmt, name=name)
        self.outputs[path.name] = self.repository.digest(path)
        return path


class CertifyService:
    """Service for rebuilding every artifact and running its certificate suite"""

    def __init__(self, out_dir: Optional[str] = None, fmt: Optional[str] = None, jobs: Optional[int] = None):
        self.out_dir = out_dir or settings.OUTPUT_DIR
        self.fmt = fmt or settings.DEFAULT_FORMAT
        self.jobs = settings.JOBS if jobs is None else jobs
        validate_format(self.fmt)
        self.repository = ComplexRepository(self.out_dir)
        self.manifests = ManifestRepository(self.out_dir)
        self._pipelines: Dict[str, Callable[..., None]] = {
            "cross-polytope": self._cross_polytope,
            "b-complex": self._b_complex,
            "b-suite": self._b_suite,
            "shelling": self._shelling,
            "cycle": self._cycle,
            "cs-product": self._cs_product,
            "balanced-product": self._balanced_product,
            "inductive": self._inductive,
            "homology-engine": self._homology_engine,
        }

    def certify(self, target: str, params: Dict[str, Any], command: Optional[Sequence[str]] = None) -> RunManifest:
        """
        Run the certificate suite of one target and write its manifest

        Args:
            target: one of TARGETS
            params: keyword arguments of the target pipeline (d, i, ...)
            command: command line recorded in the manifest

        Returns: the manifest; passed is True iff every report passed
        Raises: ValidationException for an unknown target or bad parameters
        """
        if target not in self._pipelines:
            raise ValidationException("Validation failed", details={"target": f"unknown target '{target}'"})
        run = RunRecorder(self.repository, self.fmt, self.jobs)
        params = {k: v for k, v in params.items() if v is not None}
        try:
            signature(self._pipelines[target]).bind(run, **params)
        except TypeError as e:
            raise ValidationException("Validation failed", details={"parameters": f"{target}: {e}"})
        logger.info(f"Certifying {target} with {params}")

        start = perf_counter()
        try:
            self._pipelines[target](run, **params)
        except CHECK_ERRORS as e:
            logger.error(f"{target} construction failed: {e}")
            details = getattr(e, "details", None) or getattr(e, "witness", None) or {}
            run.add(VerificationReport(
                check="construction",
                passed=False,
                witness={"error": type(e).__name__, "message": str(e), "details": details},
            ))
        run.timings["total"] = round(perf_counter() - start, 4)

        manifest = RunManifest(
            command=list(command or ["certify", target]),
            target=target,
            parameters=params,
            outputs=run.outputs,
            reports=run.reports,
            timings=run.timings,
            passed=all(r.passed for r in run.reports),
        )
        self.manifests.save(manifest, manifest_name(target, params))
        logger.info(f"{target}: {len(run.reports)} checks, passed={manifest.passed}")
        return manifest

    async def certify_many(
        self, plan: Sequence[Tuple[str, Dict[str, Any]]], command: Optional[Sequence[str]] = None
    ) -> List[RunManifest]:
        """Run independent targets concurrently, `jobs` at a time"""
        loop = asyncio.get_running_loop()
        pool_type = ProcessPoolExecutor if self.jobs > 1 else ThreadPoolExecutor
        with pool_type(max_workers=max(self.jobs, 1)) as pool:
            futures = [
                loop.run_in_executor(pool, _run_target, target, params, self.out_dir, self.fmt, command)
                for target, params in plan
            ]
            return list(await asyncio.gather(*futures))

    def certify_all(self, max_d: int = 6, command: Optional[Sequence[str]] = None) -> List[RunManifest]:
        return asyncio.run(self.certify_many(all_plan(max_d), command))

    # pipelines

    def _cross_polytope(self, run: RunRecorder, d: int) -> None:
        sphere = CrossPolytopeService.cross_polytope_boundary(d)
        complex_ = sphere.complex
        run.save(sphere.annotated(), complex_.name)
        run.expect("f0", len(complex_.vertices), 2 * d)
        run.expect("facets", len(complex_), 2 ** d)
        run.add(VerifyService.check_balanced(complex_, sphere.coloring))
        run.add(VerifyService.check_cs(complex_, sphere.antipode))
        run.add(VerifyService.check_closed_pseudomanifold(complex_))
        run.homology("homology", complex_, HomologyService.sphere_profile(d - 1))

    def _b_complex(self, run: RunRecorder, i: int, d: int) -> None:
        b = CrossPolytopeService.b_complex(i, d)
        sphere = CrossPolytopeService.cross_polytope_boundary(d).complex
        run.save(
            AnnotatedComplex(b, coloring=standard_coloring(d), involution=antipode_map(d)),
            f"b_complex_{i}_{d}",
        )
        run.add(VerifyService.skeleton_contained(b, sphere, i))
        run.homology("homology", b, HomologyService.sphere_profile(i))
        if 1 <= i <= d - 3:
            rim = CrossPolytopeService.b_complex_boundary(i, d)
            run.homology("boundary_homology", rim, HomologyService.sphere_product_profile(i, d - i - 2))
        if i == 1:
            run.expect("facets", len(b), 2 * d)
            cycle = CrossPolytopeService.verify_cycle_antipodal(b, antipode_map(d))
            run.expect("cycle_length", len(cycle), 2 * d)

        generators = CrossPolytopeService.b_complex_symmetries(i, d)
        for g in generators:
            run.add(VerifyService.check_automorphism(b, g))
        closure = VerifyService.group_closure(generators)
        run.expect("symmetry_order", closure.order, 4 * d)
        run.expect("vertex_transitive", closure.vertex_transitive, True)

        if i <= d - 2:
            complement = ComplexService.complement(sphere, b, name=f"complement_B({i},{d})")
            run.isomorphic("complement_isomorphism", complement, CrossPolytopeService.b_complex(d - i - 2, d))

    def _b_suite(self, run: RunRecorder, max_d: int = 7) -> None:
        validate_dimension(max_d, 4, name="max_d")
        for d in range(4, max_d + 1):
            for i in range(1, d - 1):
                with run.scope(f"B({i},{d})"):
                    self._b_complex(run, i=i, d=d)

    def _shelling(self, run: RunRecorder, d: int, i: Optional[int] = None) -> None:
        validate_dimension(d, 3)
        top = min(ceil((d + 1) / 2), d - 1) if i is None else i
        bound = CrossPolytopeService.shelling_bound(d)
        for level in range(0, top + 1):
            ball = CrossPolytopeService.gamma_range(0, level, d)
            order = ShellingService.lemma_shelling_order(level, d)
            check = f"shelling[i={level}]"
            if level > bound:
                try:
                    ShellingService.verify_shelling(ball, order)
                except NotAShellingException as e:
                    run.add(VerificationReport(
                        check=f"{check}_rejected",
                        passed=True,
                        metrics={"step": e.step, "facet": list(e.facet), "intersection": e.intersection},
                        note=f"the belt order stops being a shelling above level {bound}",
                    ))
                else:
                    run.add(VerificationReport(
                        check=f"{check}_rejected", passed=False, witness={"accepted_levels": level}
                    ))
                continue

            with run.timed(check):
                certificate = ShellingService.verify_shelling(ball, order)
            wrong = []
            for position, restriction in enumerate(certificate.restrictions):
                belt, k = (0, 1) if position == 0 else ((position - 1) // d + 1, (position - 1) % d + 1)
                expected = list(ShellingService.expected_restriction(belt, k, d))
                if restriction != expected:
                    wrong.append({"facet": certificate.order[position], "found": restriction, "expected": expected})
            run.add(VerificationReport(
                check=check,
                passed=not wrong,
                witness=wrong[0] if wrong else None,
                metrics={"restrictions": certificate.restrictions[-d:] if level else certificate.restrictions},
            ))
        run.homology(
            "ball_homology",
            CrossPolytopeService.gamma_range(0, min(top, bound), d),
            HomologyService.acyclic_profile(d - 1),
        )

    def _cycle(self, run: RunRecorder, d: int) -> None:
        d1, d2 = CrossPolytopeService.build_d1_d2(d)
        overlap = ComplexService.intersection(d1, d2, name=f"D1∩D2_{d}")
        expected = CrossPolytopeService.expected_cycle(d)
        cycle = CrossPolytopeService.verify_cycle_antipodal(
            overlap, antipode_map(d), start=expected[0], towards=expected[1]
        )
        run.expect("cycle_length", len(cycle), 2 * d)
        run.expect("cycle_order", [list(f) for f in cycle], [list(f) for f in expected])
        run.isomorphic("isomorphic_to_B(1,d)", overlap, CrossPolytopeService.b_complex(1, d))

    def _cs_product(self, run: RunRecorder, d: int) -> None:
        with run.timed("build"):
            annotated = CrossPolytopeService.cs_sphere_product(d)
        complex_ = annotated.complex
        run.save(annotated, complex_.name)
        run.expect("f0", len(complex_.vertices), 2 * d + 2)
        run.homology("homology", complex_, HomologyService.sphere_product_profile(2, d - 3))
        run.add(VerifyService.check_cs(complex_, annotated.involution))
        sphere = CrossPolytopeService.cross_polytope_boundary(d + 1).complex
        run.add(VerifyService.skeleton_contained(complex_, sphere, 2))
        run.add(VerifyService.check_closed_pseudomanifold(complex_))
        with run.timed("vertex_links"):
            run.add(VerifyService.link_homology_survey(complex_, jobs=run.jobs))

        generators = CrossPolytopeService.cs_product_symmetries(d)
        run.add(VerifyService.check_automorphism(complex_, generators["A"]))
        shift_reports = [VerifyService.check_automorphism(complex_, generators[n]) for n in ("R", "S")]
        if d % 2 == 0:
            run.add(VerificationReport(
                check="even_d_symmetry",
                passed=True,
                metrics={r.check: {"automorphism": r.passed, "witness": r.witness} for r in shift_reports},
                note="for even d only the antipode is claimed as a symmetry",
            ))
            return
        for report in shift_reports:
            run.add(report)
        closure = VerifyService.group_closure(list(generators.values()))
        equator = sorted([x(j) for j in range(1, d + 1)] + [y(j) for j in range(1, d + 1)], key=vertex_key)
        run.expect("symmetry_order", closure.order, 4 * d)
        run.add(VerificationReport(
            check="equatorial_orbit",
            passed=equator in closure.orbits,
            witness=None if equator in closure.orbits else {"orbits": closure.orbits},
            metrics={"vertex_transitive": closure.vertex_transitive, "orbits": len(closure.orbits)},
        ))

    def _balanced_product(self, run: RunRecorder, d: int, emit_intermediates: bool = False) -> None:
        with run.timed("build"):
            result = BalancedService.build_Sigma(d)
        sigma = result.sigma
        name = f"balanced_product_{d}"
        run.save(AnnotatedComplex(sigma, coloring=result.coloring), name)
        if emit_intermediates:
            for key, part in result.intermediates().items():
                run.save(AnnotatedComplex(part, coloring=balanced_coloring(part.vertices)), f"{name}_{key}")

        f = sigma.f_vector()
        for dim, expected in BalancedService.expected_f_numbers(d).items():
            run.expect(f"f{dim}", f.f(dim), expected)
        run.expect("gamma_facets", len(result.gamma), d * 2 ** d)
        run.add(VerifyService.check_balanced(sigma, result.coloring))
        run.add(VerifyService.check_closed_pseudomanifold(sigma))
        with run.timed("vertex_links"):
            run.add(VerifyService.link_homology_survey(sigma, jobs=run.jobs))

        if d == 3:
            components = [sorted(c, key=vertex_key) for c in nx.connected_components(sigma.graph)]
            run.expect("components", len(components), 2)
            octahedron = CrossPolytopeService.cross_polytope_boundary(3).complex
            for index, vertices in enumerate(sorted(components), start=1):
                part = ComplexService.restriction(sigma, vertices, name=f"component_{index}")
                run.isomorphic(f"component_{index}_octahedron", part, octahedron)
        else:
            run.homology("homology", sigma, HomologyService.sphere_product_profile(2, d - 3))

        with run.timed("chain"):
            open_chain, closed, collapsed = BalancedService.build_gamma_chain(d)
        run.expect("open_chain_vertices", len(open_chain.complex.vertices), 6 * d - 2)
        run.expect("closed_chain_vertices", len(closed.complex.vertices), 4 * d)
        run.expect("chain_matches_gamma", collapsed == result.gamma, True)
        run.isomorphic("f(Delta_1)_isomorphic_to_B(1,d)", result.f_delta1, result.delta1)

        if d < 4:
            return
        ledger = BalancedService.missing_edge_ledger(d, sigma)
        run.expect("non_edges", len(ledger.non_edges), 10 * d)
        run.expect("same_color_non_edges", len(ledger.same_color), 6 * d)
        run.expect("deleted_non_edges", len(ledger.deleted), 2 * d)
        run.expect("never_shared_non_edges", len(ledger.never_shared), 2 * d)

        generators = BalancedService.symmetry_generators(d)
        for g in generators:
            run.add(VerifyService.check_automorphism(sigma, g))
            run.add(VerifyService.check_preserves_non_edges(sigma, g))
        swap, reflect, turn = generators
        run.expect("dihedral_relation", reflect.compose(turn) == turn.inverse().compose(reflect.inverse()), True)
        run.expect("swap_is_power_of_turn", turn.power(d) == swap, True)
        closure = VerifyService.group_closure(generators)
        run.expect("symmetry_order", closure.order, 4 * d)
        run.expect("vertex_transitive", closure.vertex_transitive, True)

    def _inductive(self, run: RunRecorder, d: int) -> None:
        validate_dimension(d, 4)
        for i in range(1, d - 1):
            with run.scope(f"B({i},{d})"):
                result = InductiveService.inductive_step(InductiveService.b_family_seed(i, d))
                target = CrossPolytopeService.b_complex(i, d + 1)
                run.expect("D_next_is_B(i,d+1)", result.d_next == target, True)
                run.add(VerifyService.check_cs(result.d_next, antipode_map(d + 1)))

        with run.scope("circle"):
            seed = InductiveService.circle_seed(d)
            for report in InductiveService.side_conditions(seed, 1):
                run.add(report)
            result = InductiveService.inductive_step(seed)
            rim = ComplexService.boundary_complex(result.d_next, name="∂D_next")
            run.save(AnnotatedComplex(rim), f"inductive_circle_{d}")
            run.homology("boundary_homology", rim, HomologyService.sphere_product_profile(1, d - 2))

    def _homology_engine(self, run: RunRecorder, samples: int = 1000, max_size: int = 40, seed: int = 0) -> None:
        for n in range(1, 8):
            vertices = [f"v{j}" for j in range(n + 1)]
            boundary = SimplicialComplex(combinations(vertices, n), name=f"∂simplex_{n}")
            run.homology(f"simplex_boundary_{n}", boundary, HomologyService.sphere_profile(n - 1))
            cone = ComplexService.join_cone(boundary, "apex")
            run.homology(f"cone_{n}", cone, HomologyService.acyclic_profile(n))

        rng = random.Random(seed)
        failures = []
        with run.timed("snf_random"):
            for sample in range(samples):
                matrix = random_sparse_matrix(rng, max_size)
                transforms = max(matrix.shape) <= settings.SNF_TRANSFORM_MAX_SIZE
                snf = HomologyService.smith_normal_form(matrix, transforms=transforms)
                factors = snf.invariant_factors
                chain_ok = all(b % a == 0 for a, b in zip(factors, factors[1:]))
                rank_ok = snf.rank == HomologyService.matrix_rank(matrix)
                if not (chain_ok and rank_ok):
                    failures.append({"sample": sample, "shape": list(matrix.shape), "factors": list(factors)})
        run.add(VerificationReport(
            check="snf_random",
            passed=not failures,
            witness=failures[0] if failures else None,
            metrics={"samples": samples, "max_size": max_size, "seed": seed},
        ))


def random_sparse_matrix(rng: random.Random, max_size: int) -> IntegerMatrix:
    rows, cols = rng.randint(1, max_size), rng.randint(1, max_size)
    density = rng.uniform(0.05, 0.4)
    entries = {
        (r, c): rng.randint(-5, 5)
        for r in range(rows)
        for c in range(cols)
        if rng.random() < density
    }
    return IntegerMatrix(rows, cols, entries)


def manifest_name(target: str, params: Dict[str, Any]) -> str:
    parts = [target] + [f"{k}{v}" for k, v in sorted(params.items()) if not isinstance(v, bool)]
    return "_".join(parts)


def all_plan(max_d: int) -> List[Tuple[str, Dict[str, Any]]]:
    """Every target needed to certify all constructions up to max_d"""
    validate_dimension(max_d, 5, name="max_d")
    upper = min(max_d + 1, 7)
    plan: List[Tuple[str, Dict[str, Any]]] = [("cross-polytope", {"d": d}) for d in range(3, max_d + 1)]
    plan.append(("b-suite", {"max_d": upper}))
    plan += [("shelling", {"d": d}) for d in range(5, upper + 1)]
    plan += [("cycle", {"d": d}) for d in range(5, upper + 1)]
    plan += [("cs-product", {"d": d}) for d in range(5, max_d + 1)]
    plan += [("balanced-product", {"d": d}) for d in range(3, max_d + 1)]
    plan += [("inductive", {"d": d}) for d in (4, 5)]
    plan.append(("homology-engine", {}))
    return plan


def _run_target(
    target: str, params: Dict[str, Any], out_dir: str, fmt: str, command: Optional[Sequence[str]]
) -> RunManifest:
    """Worker entry point; each worker builds its own service"""
    return CertifyService(out_dir=out_dir, fmt=fmt, jobs=1).certify(target, params, command)
