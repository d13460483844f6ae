import click

from locc_ops.utils import emit, handle_errors, input_option, output_options, resolve_settings, tol_option


@click.command()
@input_option()
@click.option("--protocol", "protocol_path", required=True,
              type=click.Path(dir_okay=False), help="Protocol tree (JSON).")
@tol_option
@output_options
@click.pass_context
@handle_errors
def simulate(ctx, input_path, protocol_path, tol, output_path, fmt):
    """Exactly simulate a serialized protocol on a state set."""
    from locc_ops.documents import load_protocol, load_state_set, report_document
    from locc_ops.protocol import check_conservation, simulate as run, verify_perfect

    settings = resolve_settings(ctx, {"tolerance": tol})
    states = load_state_set(input_path, tol, settings.tolerance)
    protocol = load_protocol(protocol_path)

    report = run(protocol, states)
    check_conservation(report)
    verdict = "Perfect" if verify_perfect(report) else "Probabilistic"
    findings = [f"pair {pair} not orthogonal after path {list(path)}"
                for path, pair in report.violations]
    doc = report_document("simulate", states, verdict=verdict, protocol=protocol,
                          simulation=report, findings=findings, digits=settings.float_digits)
    emit(doc, settings, fmt, output_path)
