"""Tiny helpers for writing GraphViz DOT text."""


def quote(text):
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


def render(name, vertices, edges):
    """Render a digraph.

    `vertices` is a list of ``(vertex_id, label)`` and `edges` a list of
    ``(source, target, label, attrs)`` where attrs is a dict of extra
    DOT attributes.
    """
    lines = [f"digraph {name} {{", "  node [shape=box, fontname=monospace];"]
    for vid, label in vertices:
        lines.append(f"  {vid} [label={quote(label)}];")
    for source, target, label, attrs in edges:
        parts = [f"label={quote(label)}"]
        parts += [f"{k}={quote(v)}" for k, v in attrs.items()]
        lines.append(f"  {source} -> {target} [{', '.join(parts)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
