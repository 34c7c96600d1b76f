"""
Exporter

DOT, JSON and CSV exports of Cayley balls and Davis complex truncations.
"""

import logging
import os
from datetime import datetime
from typing import Dict, Optional

import networkx as nx
import pandas as pd

from config.constants import APP_NAME, APP_VERSION, EXPORT_FORMATS
from src.core.davis import DavisComplexTruncation
from src.core.enumeration import EnumerationTable
from src.utils.file_utils import dumps_json, ensure_directory_exists, save_json_data

logger = logging.getLogger(__name__)


def _quote(text: str) -> str:
    return '"' + str(text).replace('"', '\\"') + '"'


def graph_to_dot(graph: nx.Graph, name: str, node_label: str = 'label', edge_label: Optional[str] = None) -> str:
    """Render a networkx graph as DOT text"""
    directed = graph.is_directed()
    arrow = "->" if directed else "--"
    lines = [f"{'digraph' if directed else 'graph'} {name} {{"]
    if directed:
        lines.append("  rankdir=BT;")
    for node, data in graph.nodes(data=True):
        lines.append(f"  {node} [label={_quote(data.get(node_label, node))}];")
    for a, b, data in graph.edges(data=True):
        attrs = f" [label={_quote(data[edge_label])}]" if edge_label and edge_label in data else ""
        lines.append(f"  {a} {arrow} {b}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"


class Exporter:
    """Handles export of Cayley graphs and Davis complexes"""

    def cayley_graph_dot(self, table: EnumerationTable) -> str:
        graph = table.cayley_graph()
        for _, data in graph.nodes(data=True):
            data['label'] = data['word'] or "1"
        return graph_to_dot(graph, "cayley", edge_label='generator')

    def cayley_graph_json(self, table: EnumerationTable) -> Dict:
        """JSON adjacency: ordinals as nodes, edges colored by generator"""
        data = nx.node_link_data(table.cayley_graph(), edges="links")
        data['generators'] = list(table.matrix.labels)
        data['radius'] = table.radius
        data['complete'] = table.complete
        return data

    def hasse_diagram_dot(self, cx: DavisComplexTruncation) -> str:
        return graph_to_dot(cx.hasse_diagram(), "davis")

    def one_skeleton_dot(self, cx: DavisComplexTruncation) -> str:
        graph = cx.one_skeleton()
        for node, data in graph.nodes(data=True):
            data['label'] = str(cx.table.elements[node])
        return graph_to_dot(graph, "skeleton", edge_label='generator')

    def complex_json(self, cx: DavisComplexTruncation) -> Dict:
        """Cell list {rep_word, T, dim} plus covering pairs"""
        return {
            'generators': list(cx.matrix.labels),
            'radius': cx.radius,
            'complete': cx.complete,
            'cells': [cell.to_dict() for cell in cx.cells],
            'covers': [list(pair) for pair in cx.covers],
            'counts_by_dimension': {str(k): v for k, v in cx.counts_by_dimension().items()},
        }

    def complex_frame(self, cx: DavisComplexTruncation) -> pd.DataFrame:
        return pd.DataFrame(
            {
                'cell': range(len(cx.cells)),
                'rep_word': [",".join(cell.rep.names()) for cell in cx.cells],
                'T': [",".join(cell.subset.names(cx.matrix)) for cell in cx.cells],
                'dim': [cell.dimension for cell in cx.cells],
            }
        )

    def render_table(self, table: EnumerationTable, fmt: str) -> str:
        if fmt == 'dot':
            return self.cayley_graph_dot(table)
        if fmt == 'json':
            return dumps_json(self.cayley_graph_json(table)) + "\n"
        if fmt == 'csv':
            return table.to_frame().to_csv(index=False)
        raise ValueError(f"unknown export format {fmt!r}; expected one of {EXPORT_FORMATS}")

    def render_complex(self, cx: DavisComplexTruncation, fmt: str, view: str = 'hasse') -> str:
        if fmt == 'dot':
            return self.one_skeleton_dot(cx) if view == 'skeleton' else self.hasse_diagram_dot(cx)
        if fmt == 'json':
            return dumps_json(self.complex_json(cx)) + "\n"
        if fmt == 'csv':
            return self.complex_frame(cx).to_csv(index=False)
        raise ValueError(f"unknown export format {fmt!r}; expected one of {EXPORT_FORMATS}")

    def write_text(self, text: str, file_path: str) -> bool:
        """Write an export to disk"""
        try:
            ensure_directory_exists(os.path.dirname(os.path.abspath(file_path)))
            with open(file_path, 'w', encoding='utf-8') as f:
                f.write(text)
            logger.info("Export written: %s", file_path)
            return True
        except OSError as e:
            logger.error("Error writing export to %s: %s", file_path, e)
            return False

    def export_with_summary(self, text: str, file_path: str, export_type: str, source: str, counts: Dict) -> bool:
        """
        Write an export and a JSON summary next to it

        Args:
            text: Rendered export
            file_path: Output path of the export
            export_type: "cayley_graph" or "davis_complex"
            source: Presentation file the export was built from
            counts: Sizes to record (elements, cells, radius, ...)

        Returns:
            bool: True if both files were written
        """
        if not self.write_text(text, file_path):
            return False
        stem, _ = os.path.splitext(file_path)
        return self._create_summary_file(f"{stem}_summary.json", file_path, export_type, source, counts)

    def _create_summary_file(self, summary_path: str, export_path: str, export_type: str,
                             source: str, counts: Dict) -> bool:
        summary_data = {
            "export_info": {
                "export_date": datetime.now().strftime('%Y-%m-%d %H:%M:%S'),
                "export_type": export_type,
                "tool": f"{APP_NAME} {APP_VERSION}",
            },
            "input": {
                "filename": os.path.basename(source),
                "full_path": source,
            },
            "exported_files": {
                "export": os.path.basename(export_path),
                "summary": os.path.basename(summary_path),
            },
            "counts": counts,
        }
        return save_json_data(summary_data, summary_path)


def cell_counts(cx: DavisComplexTruncation) -> Dict[str, int]:
    counts: Dict[str, int] = {f"dim_{k}": v for k, v in cx.counts_by_dimension().items()}
    counts['cells'] = len(cx.cells)
    counts['covers'] = len(cx.covers)
    return counts


def table_counts(table: EnumerationTable) -> Dict[str, int]:
    internal = int((table.edges >= 0).sum())
    return {'elements': len(table), 'radius': table.radius, 'internal_edges': internal // 2}
