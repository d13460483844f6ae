import click

from locc_ops.utils import emit, handle_errors, input_option, output_options, resolve_settings, tol_option


@click.command()
@input_option()
@tol_option
@output_options
@click.pass_context
@handle_errors
def classify(ctx, input_path, tol, output_path, fmt):
    """Orthogonality graph, relation vector, case pattern and local ranks."""
    from locc_ops.documents import load_state_set, report_document
    from locc_ops.errors import InputError
    from locc_ops.states import validate

    settings = resolve_settings(ctx, {"tolerance": tol})
    states = load_state_set(input_path, tol, settings.tolerance)

    check = validate(states)
    if not check.orthogonal:
        pairs = ", ".join(f"({j},{k})" for j, k in check.non_orthogonal_pairs)
        raise InputError(f"states are not pairwise orthogonal: {pairs}", str(input_path))

    findings = [f"pair ({j},{k}) is orthogonal on more than one party"
                for j, k in check.multi_party_pairs]
    doc = report_document("classify", states, findings=findings, digits=settings.float_digits)
    emit(doc, settings, fmt, output_path)
