import argparse

from app.models.polytope import AnnotatedComplex
from app.repositories.complex_repository import ComplexRepository
from app.services.balanced_service import BalancedService, balanced_coloring
from app.services.crosspoly_service import CrossPolytopeService, antipode_map, standard_coloring
from app.services.inductive_service import InductiveService

import logging

logger = logging.getLogger(__name__)

TARGETS = ("cross-polytope", "b-complex", "gamma-belt", "cs-product", "balanced-product", "inductive")


def register(subparsers) -> None:
    parser = subparsers.add_parser("build", help="Build a complex and write it to the output directory")
    parser.add_argument("target", choices=TARGETS)
    parser.add_argument("--d", type=int, required=True, help="dimension parameter")
    parser.add_argument("--i", type=int, help="level for b-complex and inductive")
    parser.add_argument("--j", type=int, help="belt index for gamma-belt")
    parser.add_argument("--emit-intermediates", action="store_true", help="balanced-product: also write Gamma, Delta_1, Delta_2, f(Delta_1), f(Delta_2) and N")
    parser.set_defaults(func=handle)


def build_target(args: argparse.Namespace) -> dict:
    """
    Construct the requested complexes

    Returns: output name -> AnnotatedComplex, primary complex first
    """
    d = args.d
    if args.target == "cross-polytope":
        sphere = CrossPolytopeService.cross_polytope_boundary(d)
        return {sphere.complex.name: sphere.annotated()}
    if args.target == "b-complex":
        i = 1 if args.i is None else args.i
        b = CrossPolytopeService.b_complex(i, d)
        return {f"b_complex_{i}_{d}": AnnotatedComplex(b, coloring=standard_coloring(d), involution=antipode_map(d))}
    if args.target == "gamma-belt":
        j = 0 if args.j is None else args.j
        belt = CrossPolytopeService.gamma(j, d)
        return {f"gamma_{j}_{d}": AnnotatedComplex(belt, coloring=standard_coloring(d))}
    if args.target == "cs-product":
        annotated = CrossPolytopeService.cs_sphere_product(d)
        return {annotated.name: annotated}
    if args.target == "balanced-product":
        result = BalancedService.build_Sigma(d)
        name = f"balanced_product_{d}"
        outputs = {name: AnnotatedComplex(result.sigma, coloring=result.coloring)}
        if args.emit_intermediates:
            for key, part in result.intermediates().items():
                outputs[f"{name}_{key}"] = AnnotatedComplex(part, coloring=balanced_coloring(part.vertices))
        return outputs

    seed = InductiveService.circle_seed(d) if args.i is None else InductiveService.b_family_seed(args.i, d)
    result = InductiveService.inductive_step(seed)
    suffix = "circle" if args.i is None else f"{args.i}"
    return {f"inductive_{suffix}_{d}": AnnotatedComplex(result.d_next)}


def handle(args: argparse.Namespace) -> int:
    repository = ComplexRepository(args.out)
    for name, annotated in build_target(args).items():
        path = repository.save(annotated, args.format, name=name)
        complex_ = annotated.complex
        print(f"{path}: {len(complex_.vertices)} vertices, f = {tuple(complex_.f_vector().proper)}")
    return 0
