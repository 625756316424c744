"""Text, JSON and self-contained HTML renderings of an explanation."""
import html
from typing import Iterable, List

from utils.helpers import dumps_json

from .explanation import DeepNode, Explanation, ExplanationItem, Method, Polarity
from .scoring import adjusted_base_score, adjusted_score, highlight_scores

FORMATS = ("text", "json", "html")

POSITIVE_RGB = "0, 160, 0"
NEGATIVE_RGB = "220, 0, 0"


def _mark(item: ExplanationItem) -> str:
    return "+" if item.polarity is Polarity.SUPPORTER else "−"


def _banner(explanation: Explanation) -> str:
    how = explanation.method.value
    if explanation.variant:
        how += f", {explanation.variant}"
    return (
        f"Prediction: class {explanation.predicted_class} "
        f"(probability {explanation.probability:.4f}) [{how}]"
    )


def _item_line(item: ExplanationItem) -> str:
    return (
        f"{_mark(item)} {item.argument_id} {item.pattern} "
        f"strength={float(item.strength):.4f} score={adjusted_score(item):+.4f} "
        f"base={adjusted_base_score(item):+.4f} \"{item.span_text}\""
    )


def _text_tree(node: DeepNode, depth: int, out: List[str]) -> None:
    out.append("  " * depth + _item_line(node.item))
    for child in node.children:
        _text_tree(child, depth + 1, out)


def render_text(explanation: Explanation) -> str:
    lines = [f"Document {explanation.document_id}: {' '.join(explanation.tokens)}", _banner(explanation)]
    if explanation.method is Method.DEEP:
        for node in explanation.deep:
            _text_tree(node, 1, lines)
    else:
        for title, group in (("Supporters", explanation.supporters), ("Attackers", explanation.attackers)):
            if group:
                lines.append(f"{title}:")
                lines.extend("  " + _item_line(item) for item in group)
    return "\n".join(lines) + "\n"


def _rgba(score: float, scale: float) -> str:
    rgb = POSITIVE_RGB if score > 0 else NEGATIVE_RGB
    return f"rgba({rgb}, {abs(score) / scale:.3f})"


def _highlighted_text(explanation: Explanation) -> str:
    scores = highlight_scores(len(explanation.tokens), explanation.items)
    scale = max((abs(v) for v in scores), default=0.0)
    words = []
    for token, score in zip(explanation.tokens, scores):
        text = html.escape(token)
        if score != 0 and scale > 0:
            words.append(
                f'<mark style="background-color: {_rgba(score, scale)}" title="{score:+.4f}">{text}</mark>'
            )
        else:
            words.append(text)
    return " ".join(words)


def _item_html(item: ExplanationItem, samples: Iterable[str]) -> str:
    color = f"rgb({POSITIVE_RGB})" if item.supported_class == 1 else f"rgb({NEGATIVE_RGB})"
    parts = [
        f'<span style="font-weight: bold; color: {color}">{html.escape(_mark(item))} {adjusted_score(item):+.4f}</span>',
        f'<code>{html.escape(item.pattern)}</code>',
        f'<span style="color: #555">{html.escape(item.description)}</span>',
    ]
    if item.span_text:
        parts.append(f'&ldquo;{html.escape(item.span_text)}&rdquo;')
    samples = list(samples)
    if samples:
        quoted = "; ".join(html.escape(s) for s in samples)
        parts.append(f'<span style="font-size: small; color: #777">e.g. {quoted}</span>')
    return " ".join(parts)


def _node_html(node: DeepNode, explanation: Explanation, out: List[str], depth: int) -> None:
    pad = "  " * depth
    body = _item_html(node.item, explanation.samples.get(node.item.pattern, ()))
    if not node.children:
        out.append(f'{pad}<div style="margin-left: 1.5em">{body}</div>')
        return
    out.append(f'{pad}<details style="margin-left: 1.5em"><summary>{body}</summary>')
    for child in node.children:
        _node_html(child, explanation, out, depth + 1)
    out.append(f"{pad}</details>")


def render_html(explanation: Explanation) -> str:
    title = html.escape(f"Explanation for {explanation.document_id}")
    out = [
        "<!DOCTYPE html>",
        '<html lang="en">',
        "<head>",
        '<meta charset="utf-8">',
        f"<title>{title}</title>",
        "</head>",
        '<body style="font-family: sans-serif; max-width: 60em; margin: 2em auto">',
        f'<div style="padding: 0.5em; background-color: #eee; font-weight: bold">{html.escape(_banner(explanation))}</div>',
    ]
    if explanation.tokens:
        out.append(f'<p style="line-height: 2">{_highlighted_text(explanation)}</p>')
    if explanation.method is Method.DEEP and explanation.deep:
        out.append("<section>")
        for node in explanation.deep:
            _node_html(node, explanation, out, 1)
        out.append("</section>")
    elif explanation.items:
        out.append('<ul style="list-style: none">')
        for item in explanation.items:
            body = _item_html(item, explanation.samples.get(item.pattern, ()))
            out.append(f"  <li>{body}</li>")
        out.append("</ul>")
    out.extend(["</body>", "</html>"])
    return "\n".join(out) + "\n"


def render(explanation: Explanation, fmt: str = "text") -> bytes:
    """Deterministic bytes for one explanation in ``fmt`` (text, json or html)."""
    if fmt == "text":
        return render_text(explanation).encode("utf-8")
    if fmt == "json":
        return dumps_json(explanation.to_dict()).encode("utf-8")
    if fmt == "html":
        return render_html(explanation).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
