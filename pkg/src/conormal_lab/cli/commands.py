"""Dispatch of session commands to the library operations."""

from __future__ import annotations

import inspect
from dataclasses import dataclass, field

from .. import criteria
from ..blowup import ClosureCandidate, GradedAlgebra, analytic_spread, associated_graded, linear_type_check, rees_of_ideal
from ..errors import ConormalLabError, InputError
from ..groebner.matrix import Matrix
from ..ideals import INFINITE_HEIGHT, Ideal, dimension_and_height, fitting_ideal
from ..modules import FPModule, bidual_and_compare, determinant_ideal, m_full_test, module_rank, present_conormal
from .session import Command, SessionFile, build_matrix


class CommandError(ConormalLabError):
    """A library error annotated with the command that raised it."""

    def __init__(self, command: Command, cause: Exception):
        self.command = command
        self.cause = cause
        super().__init__(f"line {command.line}: run {command.label}: {cause}")


def _polys(gens) -> list[str]:
    return [str(f) for f in gens]


def _height(h):
    return "infinity" if h == INFINITE_HEIGHT else int(h)


def _module_summary(M: FPModule) -> dict:
    out = {"generators": M.ngens, "nu": M.nu(), "twists": list(M.twists), "relations": M.presentation.ncols}
    if M.presentation.ncols <= 12 and M.ngens <= 12:
        out["presentation"] = M.presentation.format()
    return out


def _algebra_summary(A: GradedAlgebra) -> dict:
    rels = A.relations()
    return {
        "label": A.label,
        "ambient": list(A.ambient.names),
        "x_degrees": list(A.x_degrees),
        "defining_ideal": _polys(rels),
        "dimension": A.dimension(),
    }


@dataclass
class Context:
    session: SessionFile
    max_degree: int = 4
    seed: int = 0
    values: dict = field(default_factory=dict)
    _graded: dict = field(default_factory=dict)

    # -- name resolution ---------------------------------------------------
    def lookup(self, name):
        if name in self.values:
            return self.values[name]
        s = self.session
        if name in s.ideals:
            decl = s.ideals[name]
            if isinstance(decl.generators, tuple):
                _, t, mat = decl.generators
                obj = fitting_ideal(build_matrix(s, mat), t)
            else:
                obj = Ideal(s.ring, decl.generators)
            self.values[name] = obj
            return obj
        if name in s.matrices:
            obj = build_matrix(s, name)
            self.values[name] = obj
            return obj
        if name in s.closures:
            return s.closures[name]
        raise InputError(f"undefined reference {name!r}")

    def ideal(self, name) -> Ideal:
        obj = self.lookup(name)
        if not isinstance(obj, Ideal):
            raise InputError(f"{name!r} is not an ideal")
        return obj

    def module(self, name) -> FPModule:
        obj = self.lookup(name)
        if isinstance(obj, Ideal):
            return present_conormal(obj)
        if isinstance(obj, FPModule):
            return obj
        raise InputError(f"{name!r} is neither an ideal nor a module")

    def graded(self, name) -> GradedAlgebra:
        obj = self.lookup(name)
        if isinstance(obj, GradedAlgebra):
            return obj
        if name not in self._graded:
            self._graded[name] = associated_graded(self.ideal(name))
        return self._graded[name]


def _criterion(report: criteria.CriterionReport) -> dict:
    return {"kind": "criterion", "result": report.as_dict(), "verdict": report.verdict}


def _computation(result: dict, value=None) -> dict:
    return {"kind": "computation", "result": result, "value": value}


def cmd_gb(ctx: Context, name):
    I = ctx.ideal(name)
    return _computation({"groebner_basis": _polys(I.reduced_generators()), "order": str(I.ring.order.kind)}, I)


def cmd_dim(ctx: Context, name):
    I = ctx.ideal(name)
    if I.is_unit():
        return _computation({"dimension": -1, "height": "infinity"})
    d, h = dimension_and_height(I)
    return _computation({"dimension": d, "height": h})


def cmd_fitting(ctx: Context, name, t=None):
    obj = ctx.lookup(name)
    if isinstance(obj, Matrix):
        if t is None:
            raise InputError("fitting on a matrix needs a minor size")
        I = fitting_ideal(obj, int(t))
        return _computation(
            {"minor_size": int(t), "generators": _polys(I.reduced_generators()), "height": _height(I.height())}, I
        )
    prof = criteria.fitting_height_profile(ctx.ideal(name))
    return _computation({"profile": prof.as_dicts(), "passed": prof.passed})


def cmd_resolve(ctx: Context, name):
    obj = ctx.lookup(name)
    M = FPModule.cyclic(obj) if isinstance(obj, Ideal) else ctx.module(name)
    res = M.resolution()
    graded = [{"index": i, "twists": {str(k): v for k, v in sorted(g.items())}} for i, g in enumerate(res.graded_betti())]
    return _computation({"betti": res.betti(), "graded_betti": graded, "length": res.length})


def cmd_conormal(ctx: Context, name):
    p = ctx.ideal(name)
    E = present_conormal(p)
    out = _module_summary(E)
    out["rank"] = module_rank(E)
    return _computation(out, E)


def cmd_bidual(ctx: Context, name):
    M = ctx.module(name)
    res = bidual_and_compare(M)
    out = {
        "nu": M.nu(),
        "nu_dual": res.dual.nu(),
        "nu_bidual": res.bidual.nu(),
        "evaluation_injective": res.injective,
        "evaluation_surjective": res.surjective,
        "reflexive": res.is_reflexive,
        "defect_nu": res.defect.nu(),
    }
    if res.defect.is_finite_length():
        out["defect_dimensions"] = {str(k): v for k, v in res.defect.hilbert_dimensions().items()}
    return _computation(out, res.bidual)


def cmd_det(ctx: Context, name, matrix=None):
    p = ctx.ideal(name)
    if matrix is not None:
        A = ctx.lookup(matrix)
        if not isinstance(A, Matrix):
            raise InputError(f"{matrix!r} is not a matrix")
        D = determinant_ideal(A) + p
        src = f"matrix {matrix}"
    else:
        E = present_conormal(p)
        A, _, idx = criteria.choose_embedding(E)
        if A is None:
            raise InputError("no embedding of full rank found among the dual generators")
        D = determinant_ideal(A) + p
        src = f"dual generators {list(idx)}"
    return _computation(
        {"embedding": src, "determinant_ideal": _polys(D.reduced_generators()), "height": _height(D.height())}, D
    )


def cmd_rees(ctx: Context, name):
    A = rees_of_ideal(ctx.ideal(name))
    return _computation(_algebra_summary(A), A)


def cmd_assoc_graded(ctx: Context, name):
    A = ctx.graded(name)
    return _computation(_algebra_summary(A), A)


def cmd_component(ctx: Context, t, name):
    A = ctx.graded(name)
    M = A.component(int(t), ctx.max_degree)
    out = _module_summary(M)
    out["degree"] = int(t)
    return _computation(out, M)


def cmd_linear_type(ctx: Context, name):
    return _computation({"linear_type": linear_type_check(ctx.ideal(name))})


def cmd_spread(ctx: Context, name):
    return _computation({"analytic_spread": analytic_spread(ctx.ideal(name))})


def cmd_m_full(ctx: Context, name):
    M = ctx.module(name)
    if M.embedding is None:
        D = M.dual()
        M = FPModule(M.ring, M.presentation, M.ideal, D.embedding.transpose())
    x = m_full_test(M, seed=ctx.seed)
    # a failed search does not prove the module is not m-full
    return _computation({"witness": str(x) if x is not None else None, "m_full": True if x is not None else "inconclusive"})


def cmd_verify_closure(ctx: Context, name, named="mG"):
    decl = ctx.lookup(name)
    G = ctx.graded(decl.ideal)
    cand = ClosureCandidate.build(G, decl.new_variables, decl.relations, decl.degrees)
    res = criteria.verify_integral_closure_candidate(G, cand, named)
    out = res.as_dict()
    ok = res.integral and res.injective and res.annihilates and res.relations_in_ideal
    if res.equals_named is not None:
        ok = ok and res.equals_named
    return {"kind": "criterion", "result": out, "verdict": "holds" if ok else "fails"}


def _crit(fn, with_degree=False):
    def run(ctx: Context, name):
        p = ctx.ideal(name)
        return _criterion(fn(p, ctx.max_degree) if with_degree else fn(p))

    return run


DISPATCH = {
    "gb": cmd_gb,
    "dim": cmd_dim,
    "fitting": cmd_fitting,
    "resolve": cmd_resolve,
    "conormal": cmd_conormal,
    "bidual": cmd_bidual,
    "det": cmd_det,
    "rees": cmd_rees,
    "assoc-graded": cmd_assoc_graded,
    "component": cmd_component,
    "linear-type": cmd_linear_type,
    "spread": cmd_spread,
    "m-full": cmd_m_full,
    "domain-criterion": _crit(criteria.domain_criterion),
    "normality-criterion": _crit(criteria.normality_criterion),
    "normal-locus": _crit(criteria.normal_locus_obstructions),
    "closedness-pipeline": _crit(criteria.conormal_closedness_pipeline),
    "top-component": _crit(criteria.top_component_nonreflexive, True),
    "nu2-check": _crit(criteria.nu2_defect_check, True),
    "sliding-depth": _crit(criteria.sliding_depth_check),
    "verify-closure": cmd_verify_closure,
}


def run_command(ctx: Context, cmd: Command) -> dict:
    """Run one command; the fragment records its label, line and result."""
    fn = DISPATCH[cmd.name]
    try:
        inspect.signature(fn).bind(ctx, *cmd.args)
    except TypeError:
        raise CommandError(cmd, InputError(f"wrong number of arguments for {cmd.name}")) from None
    try:
        out = fn(ctx, *cmd.args)
    except ConormalLabError as exc:
        raise CommandError(cmd, exc) from exc
    value = out.pop("value", None)
    if cmd.alias:
        if value is None:
            raise CommandError(cmd, InputError(f"{cmd.name} produces no value to name"))
        ctx.values[cmd.alias] = value
    fragment = {"command": cmd.label, "line": cmd.line}
    if cmd.alias:
        fragment["as"] = cmd.alias
    fragment.update(out)
    return fragment


def run_session(session: SessionFile, max_degree: int = 4, seed: int = 0) -> list[dict]:
    ctx = Context(session, max_degree, seed)
    return [run_command(ctx, c) for c in session.commands]
