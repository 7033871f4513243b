use qsl3::pbw::Engine;
use qsl3::scalar::Scalar;
use qsl3::verify::*;
use std::time::Instant;
fn main() {
    let engine: Engine<Scalar> = Engine::new(());
    let cfg = VerifyConfig::default();
    for suite in SuiteName::ALL {
        let t = Instant::now();
        let rep = run_suite(&engine, suite, &cfg);
        let failed: Vec<_> = rep.checks.iter().filter(|c| !c.passed).collect();
        println!("{:<10} {:>5} checks, passed: {:<5} in {:?}", rep.suite, rep.checks.len(), rep.passed, t.elapsed());
        for f in failed { println!("    FAIL: {} {:?}", f.name, f.detail); }
    }
}
