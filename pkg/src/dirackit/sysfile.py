"""Loader for the line-oriented system definition format.

Sections may appear in any order; '#' starts a comment anywhere.
Expression text uses the expression grammar verbatim, so there is no
ambiguity between configuration parsing and expression parsing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import SamplerConfig
from .closure import PrimarySet
from .errors import DiracKitError, ExpressionSyntaxError, ValidationError
from .expr import RationalExpr
from .parser import parse_expression
from .phase_space import PhaseSpace

_SECTIONS = ("system", "constraints", "hamiltonian", "primaries", "onshell", "sampler")


@dataclass(frozen=True)
class SystemSpec:
    ps: PhaseSpace
    constraint_names: tuple[str, ...]
    constraints: tuple[RationalExpr, ...]
    hamiltonian: RationalExpr | None
    primaries: PrimarySet | None
    on_shell_names: tuple[str, ...]
    sampler: SamplerConfig

    def on_shell_rules(self):
        by_name = dict(zip(self.constraint_names, self.constraints))
        return [by_name[n].as_polynomial() for n in self.on_shell_names]


def _strip(line: str) -> str:
    if "#" in line:
        line = line[:line.index("#")]
    return line.strip()


def _split_kv(line: str, lineno: int):
    if "=" not in line:
        raise ValidationError(f"line {lineno}: expected 'name = value', got {line!r}")
    key, _, value = line.partition("=")
    key, value = key.strip(), value.strip()
    if not key or not value:
        raise ValidationError(f"line {lineno}: empty name or value in {line!r}")
    return key, value


def load_system(path: str) -> SystemSpec:
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read()
    return parse_system(raw, source=str(path))


def parse_system(text: str, source: str = "<string>") -> SystemSpec:
    sections: dict[str, list[tuple[int, str]]] = {}
    current = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = _strip(line)
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in _SECTIONS:
                raise ValidationError(f"{source}:{lineno}: unknown section [{name}]")
            if name in sections:
                raise ValidationError(f"{source}:{lineno}: duplicate section [{name}]")
            sections[name] = []
            current = name
            continue
        if current is None:
            raise ValidationError(f"{source}:{lineno}: content before any section")
        sections[current].append((lineno, line))

    if "system" not in sections:
        raise ValidationError(f"{source}: missing [system] section")

    n = None
    parameters: tuple[str, ...] = ()
    bindings: dict[str, float] = {}
    for lineno, line in sections["system"]:
        if line.startswith("bind "):
            key, value = _split_kv(line[5:], lineno)
            try:
                bindings[key] = float(value)
            except ValueError:
                raise ValidationError(
                    f"{source}:{lineno}: bad numeric binding {value!r}") from None
            continue
        key, value = _split_kv(line, lineno)
        if key == "n":
            try:
                n = int(value)
            except ValueError:
                raise ValidationError(f"{source}:{lineno}: n must be an integer") from None
        elif key == "parameters":
            parameters = tuple(p.strip() for p in value.replace(",", " ").split())
        else:
            raise ValidationError(f"{source}:{lineno}: unknown [system] key {key!r}")
    if n is None:
        raise ValidationError(f"{source}: [system] must declare n")
    for name in bindings:
        if name not in parameters:
            raise ValidationError(f"{source}: binding for undeclared parameter {name!r}")
    ps = PhaseSpace(n=n, parameters=parameters)

    def parse_named(section: str):
        names, exprs = [], []
        for lineno, line in sections.get(section, []):
            key, value = _split_kv(line, lineno)
            if key in names:
                raise ValidationError(f"{source}:{lineno}: duplicate name {key!r}")
            try:
                exprs.append(parse_expression(value, ps))
            except ExpressionSyntaxError as exc:
                raise ValidationError(
                    f"{source}:{lineno}:{exc.position}: {exc}") from exc
            except DiracKitError as exc:
                raise ValidationError(f"{source}:{lineno}: {exc}") from exc
            names.append(key)
        return tuple(names), tuple(exprs)

    constraint_names, constraints = parse_named("constraints")
    if not constraints:
        raise ValidationError(f"{source}: missing or empty [constraints] section")

    ham_names, ham_exprs = parse_named("hamiltonian")
    if len(ham_exprs) > 1:
        raise ValidationError(f"{source}: [hamiltonian] must declare one expression")
    hamiltonian = ham_exprs[0] if ham_exprs else None

    prim_names, prim_exprs = parse_named("primaries")
    primaries = None
    if prim_names:
        primaries = PrimarySet(names=prim_names, exprs=prim_exprs,
                               hamiltonian=hamiltonian)

    on_shell = []
    for lineno, line in sections.get("onshell", []):
        if not line.startswith("use "):
            raise ValidationError(f"{source}:{lineno}: expected 'use <constraint name>'")
        name = line[4:].strip()
        if name not in constraint_names:
            raise ValidationError(f"{source}:{lineno}: unknown constraint {name!r}")
        on_shell.append(name)

    sampler_kwargs = {"parameter_bindings": bindings}
    keys = {"seed": int, "points": int, "tolerance": float,
            "max_newton_iters": int, "max_retries": int}
    rename = {"points": "point_count"}
    for lineno, line in sections.get("sampler", []):
        key, value = _split_kv(line, lineno)
        if key not in keys:
            raise ValidationError(f"{source}:{lineno}: unknown [sampler] key {key!r}")
        try:
            sampler_kwargs[rename.get(key, key)] = keys[key](value)
        except ValueError:
            raise ValidationError(f"{source}:{lineno}: bad value for {key!r}") from None
    sampler = SamplerConfig(**sampler_kwargs)

    return SystemSpec(
        ps=ps,
        constraint_names=constraint_names,
        constraints=constraints,
        hamiltonian=hamiltonian,
        primaries=primaries,
        on_shell_names=tuple(on_shell),
        sampler=sampler,
    )
