import click

from locc_ops.utils import emit, handle_errors, input_option, output_options, resolve_settings, tol_option


def _parse_dims(raw):
    if raw is None:
        return None
    try:
        return tuple(int(x) for x in raw.split(","))
    except ValueError:
        raise click.BadParameter("dims must be comma-separated integers, e.g. 5,5")


@click.command()
@input_option(help="Graph spec (JSON): states, parties and 1-based edges per party.")
@click.option("--seed", type=int, default=None, help="Random seed (default from config).")
@click.option("--dims", default=None, help="Local dimensions, e.g. 5,5 (default: generator.dim per party).")
@tol_option
@output_options
@click.pass_context
@handle_errors
def generate(ctx, input_path, seed, dims, tol, output_path, fmt):
    """
    Realize an orthogonality graph with random product states.

    JSON output is the state-set document itself; text output summarizes
    the realized graph.
    """
    from locc_ops.documents import dumps, graph_from_doc, read_json, report_document, state_set_to_doc
    from locc_ops.states import generate_from_graph

    settings = resolve_settings(ctx, {"tolerance": tol, "generator": {"seed": seed}})
    target = graph_from_doc(read_json(input_path))
    dims = _parse_dims(dims) or (settings.generator_dim,) * target.m

    states = generate_from_graph(target, dims, settings.generator_seed,
                                 settings.generator_max_retries, settings.tolerance)
    if (fmt or settings.output_format) == "text":
        doc = report_document("generate", states, seed=settings.generator_seed,
                              digits=settings.float_digits)
        emit(doc, settings, "text", output_path)
        return

    text = dumps(state_set_to_doc(states, settings.float_digits))
    if output_path:
        output_path.write_text(text)
    else:
        click.echo(text, nl=False)
