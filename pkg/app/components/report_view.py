"""
Report View
===========
Rich tables for the text output format of the CLI.
"""

from typing import Dict, Optional

from rich.console import Console
from rich.table import Table
from rich.text import Text

STATUS_STYLES = {
    'pass': 'green',
    'fail': 'bold red',
    'skipped': 'yellow',
}


def render_values(console: Console, title: str, values: Dict[str, str]):
    """Two-column table of named invariants."""
    table = Table(title=title, show_lines=False)
    table.add_column('invariant', style='cyan', no_wrap=True)
    table.add_column('value')
    for name in sorted(values):
        table.add_row(name, str(values[name]))
    console.print(table)


def render_cross_check(console: Console, rows: Dict[str, dict]):
    if not rows:
        return
    table = Table(title='sheaf cross-check')
    table.add_column('invariant', style='cyan')
    table.add_column('combinatorial')
    table.add_column('sheaf')
    table.add_column('agrees')
    for name in sorted(rows):
        row = rows[name]
        agrees = row['agrees']
        table.add_row(name, row['combinatorial'], row['sheaf'],
                      Text('yes' if agrees else 'no', style='green' if agrees else 'bold red'))
    console.print(table)


def render_sheaf_summary(console: Console, summary: dict):
    table = Table(title=f"{summary['structure']} sheaf on {summary['fan']}")
    table.add_column('field', style='cyan')
    table.add_column('value')
    for key in ('poincare', 'hodge_deligne', 'flabby', 'summands', 'dump'):
        if key in summary:
            table.add_row(key, str(summary[key]))
    console.print(table)


def render_report(console: Console, report: dict, show_passing: bool = False):
    """Check table (failures and skips by default) followed by the counts."""
    table = Table(title='verification')
    table.add_column('check', style='cyan', no_wrap=True)
    table.add_column('status')
    table.add_column('detail', overflow='fold')
    for check in report['checks']:
        status = check['status']
        if status == 'pass' and not show_passing:
            continue
        table.add_row(check['id'], Text(status, style=STATUS_STYLES[status]), _witness_summary(check.get('witness')))
    if table.row_count:
        console.print(table)
    summary = report['summary']
    console.print(
        f"[green]{summary['pass']} passed[/green], [red]{summary['fail']} failed[/red], "
        f"[yellow]{summary['skipped']} skipped[/yellow]  corpus {report['corpus_hash'][:12]}"
    )


def _witness_summary(witness: Optional[dict]) -> str:
    if not witness:
        return ''
    if 'reason' in witness:
        reason = witness['reason']
        return reason.get('message', str(reason)) if isinstance(reason, dict) else str(reason)
    if 'error' in witness:
        return witness['error'].get('message', '')
    diff = witness.get('first_difference')
    where = witness.get('where', '')
    if diff:
        return f"{where}: first difference at {diff['exponent']}"
    return where
