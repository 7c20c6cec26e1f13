"""DOT rendering of trace levels: scaled graph, essential arcs in bold"""

from pathlib import Path
from typing import Any, Dict, List

from src.hub.hub import HubTrace, LevelRecord
from src.utils.file_utils import write_text_files


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def level_to_dot(level: LevelRecord[Any]) -> str:
    """One digraph for a level; requires the trace's graph snapshots"""
    graph = level.scaled
    if graph is None:
        raise ValueError(f"level {level.depth} was traced without snapshots")
    semiring = graph.semiring
    title = f"depth {level.depth}, divisor {semiring.format(level.divisor)}"
    lines = [f"digraph level_{level.depth:02d} {{", f"  label={_quote(title)};"]
    for vertex in graph.vertices:
        name = str(vertex)
        label = "{" + name + "}"
        lines.append(f"  {_quote(name)} [label={_quote(label)}];")
    for (source, target), weight in sorted(graph.arcs().items()):
        style = ", style=bold" if (source, target) in level.essential_arcs else ""
        lines.append(
            f"  {_quote(str(source))} -> {_quote(str(target))} "
            f"[label={_quote(semiring.format(weight))}{style}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def trace_to_dot(trace: HubTrace[Any]) -> Dict[str, str]:
    """File name to DOT text, one level-NN.dot per level"""
    return {
        f"level-{level.depth:02d}.dot": level_to_dot(level) for level in trace.levels
    }


def write_dot_files(trace: HubTrace[Any], directory: Path) -> List[Path]:
    """Write the DOT files of a trace into directory"""
    return write_text_files(directory, trace_to_dot(trace))
