import click

from locc_ops.utils import emit, handle_errors, input_option, output_options, resolve_settings, tol_option


def verdict_document(command, states, verdict, settings, seed=None):
    """Report document for any synthesis verdict."""
    from locc_ops.documents import report_document
    from locc_ops.synthesis import IndistinguishableCertified, Perfect, Probabilistic, Unknown

    digits = settings.float_digits
    if isinstance(verdict, (Perfect, Probabilistic)):
        return report_document(command, states, seed=seed, verdict=verdict.name,
                               protocol=verdict.protocol, simulation=verdict.report, digits=digits)
    if isinstance(verdict, IndistinguishableCertified):
        return report_document(command, states, seed=seed, verdict=verdict.name,
                               certificate=verdict.certificate, digits=digits)
    assert isinstance(verdict, Unknown)
    return report_document(command, states, seed=seed, verdict=verdict.name,
                           evidence=verdict.evidence,
                           findings=[verdict.reason, *verdict.findings], digits=digits)


@click.command()
@input_option()
@click.option("--depth", type=int, default=None, help="Recursion limit for the protocol search.")
@tol_option
@output_options
@click.pass_context
@handle_errors
def synthesize(ctx, input_path, depth, tol, output_path, fmt):
    """Find a perfect or probabilistic LOCC protocol, or certify that none exists."""
    from locc_ops.documents import load_state_set
    from locc_ops.synthesis import synthesize as run

    settings = resolve_settings(ctx, {"tolerance": tol, "synthesis": {"depth_limit": depth}})
    states = load_state_set(input_path, tol, settings.tolerance)
    verdict = run(states, settings.depth_limit, settings.max_candidates_per_party)
    emit(verdict_document("synthesize", states, verdict, settings), settings, fmt, output_path)
