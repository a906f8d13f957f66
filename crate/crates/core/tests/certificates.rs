use ellfive::lemmata::{replay_certificate, run_script, Kind, Options, ScriptId};
use ellfive::solver::TraceEvent;

fn bluetr_certificates() -> Vec<ellfive::lemmata::Certificate> {
    let report = run_script(ScriptId::Bluetr, &Options::default());
    assert!(report.passed);
    report.certificates().cloned().collect()
}

#[test]
fn every_certificate_replays() {
    for cert in bluetr_certificates() {
        replay_certificate(&cert).unwrap();
    }
}

#[test]
fn forced_certificate_has_unsat_then_sat() {
    let certs = bluetr_certificates();
    let forced = certs.iter().find(|c| c.kind == Kind::Forced).unwrap();
    let kinds: Vec<&str> = forced.queries.iter().map(|q| q.expect.as_str()).collect();
    assert_eq!(kinds, ["unsat", "sat"]);
}

#[test]
fn tampered_clause_is_rejected() {
    let certs = bluetr_certificates();
    let mut cert = certs
        .iter()
        .find(|c| c.kind == Kind::Unsat)
        .unwrap()
        .clone();
    cert.queries[0].clauses.pop();
    assert!(replay_certificate(&cert).is_err());
}

#[test]
fn tampered_trace_is_rejected() {
    let certs = bluetr_certificates();
    let mut cert = certs
        .iter()
        .find(|c| c.kind == Kind::Forced)
        .unwrap()
        .clone();
    let trace = &mut cert.queries[0].trace;
    let pos = trace
        .iter()
        .position(|e| matches!(e, TraceEvent::Conflict { .. }))
        .unwrap();
    trace.remove(pos);
    assert!(replay_certificate(&cert).is_err());
}

#[test]
fn wrong_expectation_is_rejected() {
    let certs = bluetr_certificates();
    let mut cert = certs
        .iter()
        .find(|c| c.kind == Kind::Forced)
        .unwrap()
        .clone();
    cert.queries.swap(0, 1);
    assert!(replay_certificate(&cert).is_err());
    let mut cert = certs
        .iter()
        .find(|c| c.kind == Kind::Unsat)
        .unwrap()
        .clone();
    cert.queries.clear();
    assert!(replay_certificate(&cert).is_err());
}

#[test]
fn certificates_serialise_round_trip() {
    for cert in bluetr_certificates() {
        let back: ellfive::lemmata::Certificate = serde_json::from_str(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
    }
}
