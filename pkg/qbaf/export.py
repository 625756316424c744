import logging
from fractions import Fraction
from numbers import Real
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

from patterns.pattern import Pattern
from utils.helpers import DataError, ModelFormatError, format_real, parse_real, read_json, write_json

from .framework import DEFAULT_ID, Argument, Qbafc, Variant, structural_violations
from .semantics import StrengthMap

logger = logging.getLogger(__name__)

CLASS_COLORS = {1: "palegreen", 0: "lightcoral"}


def format_score(value: Real) -> str:
    """Decimal string for floats, exact "p/q" for fractions."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return format_real(value)


def parse_score(text, what: str = "score") -> Real:
    if isinstance(text, str) and "/" in text:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise ModelFormatError(f"{what} is not a fraction: {text!r}") from e
    return parse_real(text, what)


def framework_to_dict(fw: Qbafc, strengths: Optional[StrengthMap] = None) -> Dict:
    arguments = []
    for a in fw.arguments:
        entry = {
            "id": a.id,
            "origin": a.origin,
            "tau": format_score(fw.base_score[a.id]),
            "class": fw.supported_class[a.id],
        }
        if a.pattern is not None:
            entry["pattern"] = a.pattern.to_dict()
        arguments.append(entry)
    payload = {
        "arguments": arguments,
        "attacks": [list(e) for e in sorted(fw.attacks)],
        "supports": [list(e) for e in sorted(fw.supports)],
        "variant": fw.variant.value,
        "post_processed": fw.post_processed,
    }
    if strengths is not None:
        payload["sigma"] = {a: format_score(strengths[a]) for a in fw.ids}
    return payload


def _parse_origin(origin, arg_id: str) -> Optional[int]:
    if origin == "default":
        return None
    if isinstance(origin, str) and origin.startswith("pattern:"):
        try:
            return int(origin.split(":", 1)[1])
        except ValueError:
            pass
    raise ModelFormatError(f"argument {arg_id} has an invalid origin {origin!r}")


def _parse_pairs(raw, key: str):
    if not isinstance(raw, list):
        raise ModelFormatError(f"framework {key!r} must be an array of pairs")
    pairs = set()
    for pair in raw:
        if not isinstance(pair, list) or len(pair) != 2 or not all(isinstance(x, str) for x in pair):
            raise ModelFormatError(f"framework {key!r} contains a malformed pair: {pair!r}")
        pairs.add((pair[0], pair[1]))
    return frozenset(pairs)


def framework_from_dict(payload: Dict) -> Tuple[Qbafc, Optional[StrengthMap]]:
    """Rebuild a framework (and its stored strengths, if any) from its JSON form."""
    if not isinstance(payload, dict) or not isinstance(payload.get("arguments"), list):
        raise ModelFormatError("framework file must be an object with an 'arguments' array")
    arguments, base_score, supported_class = [], {}, {}
    for entry in payload["arguments"]:
        if not isinstance(entry, dict) or "id" not in entry:
            raise ModelFormatError(f"malformed argument entry: {entry!r}")
        arg_id = str(entry["id"])
        index = _parse_origin(entry.get("origin", "default"), arg_id)
        pattern = Pattern.from_dict(entry["pattern"]) if "pattern" in entry else None
        arguments.append(Argument(arg_id, index, pattern))
        base_score[arg_id] = parse_score(entry.get("tau"), f"tau of {arg_id}")
        if entry.get("class") not in (0, 1):
            raise ModelFormatError(f"argument {arg_id} has class {entry.get('class')!r}")
        supported_class[arg_id] = entry["class"]
    try:
        variant = Variant(payload.get("variant", Variant.BOTTOM_UP.value))
    except ValueError as e:
        raise ModelFormatError(f"unknown variant {payload.get('variant')!r}") from e
    fw = Qbafc(
        tuple(arguments),
        _parse_pairs(payload.get("attacks", []), "attacks"),
        _parse_pairs(payload.get("supports", []), "supports"),
        base_score,
        supported_class,
        variant,
        bool(payload.get("post_processed", False)),
    )
    problems = structural_violations(fw)
    if problems:
        raise ModelFormatError("invalid framework: " + "; ".join(problems))
    strengths = None
    if "sigma" in payload:
        raw = payload["sigma"]
        if not isinstance(raw, dict) or set(raw) != set(fw.ids):
            raise ModelFormatError("framework 'sigma' must map every argument id")
        strengths = {a: parse_score(raw[a], f"sigma of {a}") for a in fw.ids}
    return fw, strengths


def load_framework(path: Union[str, Path]) -> Tuple[Qbafc, Optional[StrengthMap]]:
    try:
        return framework_from_dict(read_json(path))
    except ModelFormatError as e:
        raise ModelFormatError(f"{path}: {e}") from e


def save_framework(fw: Qbafc, path: Union[str, Path], strengths: Optional[StrengthMap] = None) -> None:
    write_json(path, framework_to_dict(fw, strengths))
    logger.info("Saved framework with %d argument(s) to %s", len(fw.arguments), path)


def _quote(text: str) -> str:
    # labels already carry "\n" line-break escapes, so only quotes are escaped
    return '"' + text.replace('"', '\\"') + '"'


def to_dot(fw: Qbafc, strengths: Optional[StrengthMap] = None, name: str = "qbafc") -> str:
    """Graphviz digraph: nodes filled by supported class, edges labelled + or -."""
    if fw.ids and DEFAULT_ID not in fw:
        raise DataError("framework has no default argument")
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;"]
    for a in fw.arguments:
        label = f"{a.id}\\n{a.label}\\ntau={format_score(fw.base_score[a.id])}"
        if strengths is not None:
            label += f"\\nsigma={format_score(strengths[a.id])}"
        color = CLASS_COLORS[fw.supported_class[a.id]]
        shape = "doublecircle" if a.is_default else "box"
        lines.append(
            f"  {_quote(a.id)} [label={_quote(label)}, shape={shape}, style=filled, fillcolor={color}];"
        )
    for src, dst, sign in fw.edges():
        style = "solid" if sign == "+" else "dashed"
        mark = "+" if sign == "+" else "−"
        lines.append(f"  {_quote(src)} -> {_quote(dst)} [label={_quote(mark)}, style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
