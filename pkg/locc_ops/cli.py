"""
cli.py — locc-ops main entry point.

Can be invoked two ways:
  1. locc-ops synthesize --input set.json
  2. python -m locc_ops synthesize --input set.json
"""
import click
from rich.console import Console

from . import __version__

console = Console()


@click.group()
@click.version_option(version=__version__, prog_name="locc-ops")
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              envvar="LOCC_OPS_CONFIG", help="YAML file overriding the packaged defaults.")
@click.option("--verbose", "-v", is_flag=True, default=False, help="Log rule applications (DEBUG).")
@click.pass_context
def main(ctx, config_path, verbose):
    """
    Local distinguishability of small orthogonal product state sets.

    Classify a set by its orthogonality graph, synthesize and simulate an
    LOCC protocol, or certify that none exists.

    \b
    Quick start:
        locc-ops demo eq11                       # perfect protocol, success 1
        locc-ops demo eq10                       # certified indistinguishable
        locc-ops synthesize --input set.json --format text
    """
    ctx.obj = {"config": config_path, "verbose": verbose}


from locc_ops.commands.classify   import classify
from locc_ops.commands.synthesize import synthesize
from locc_ops.commands.certify    import certify
from locc_ops.commands.simulate   import simulate
from locc_ops.commands.generate   import generate
from locc_ops.commands.demo       import demo

main.add_command(classify)
main.add_command(synthesize)
main.add_command(certify)
main.add_command(simulate)
main.add_command(generate)
main.add_command(demo)
