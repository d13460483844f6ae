import click

from locc_ops.utils import emit, handle_errors, input_option, output_options, resolve_settings, tol_option


@click.command()
@input_option()
@tol_option
@output_options
@click.pass_context
@handle_errors
def certify(ctx, input_path, tol, output_path, fmt):
    """Per-party orthogonality-preserving measurement spaces and their triviality."""
    from locc_ops.certificate import Certificate, party_evidence
    from locc_ops.documents import load_state_set, report_document
    from locc_ops.errors import InputError
    from locc_ops.states import validate

    settings = resolve_settings(ctx, {"tolerance": tol})
    states = load_state_set(input_path, tol, settings.tolerance)
    if not validate(states).orthogonal:
        raise InputError("states are not pairwise orthogonal", str(input_path))

    evidence = party_evidence(states)
    if all(ev.verdict.trivial for ev in evidence):
        cert = Certificate(tuple(evidence), states.labels)
        cert.recheck(states)
        doc = report_document("certify", states, verdict="IndistinguishableCertified",
                              certificate=cert, digits=settings.float_digits)
    else:
        doc = report_document("certify", states, verdict="NotCertified", evidence=evidence,
                              digits=settings.float_digits)
    emit(doc, settings, fmt, output_path)
