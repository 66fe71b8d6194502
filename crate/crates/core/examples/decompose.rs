//! Writes several targets `u` as `x·y` with `x, y ∈ K` and checks each
//! certificate.

use selfsim_mult::decompose::{verify_certificate, CertificateRecord, Decomposer};
use selfsim_mult::ifs::validate_params;
use selfsim_mult::numerics::{fmt_rational, rat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = validate_params(&rat(1, 3), &rat(4, 9))?;
    let dec = Decomposer::new(&p)?;
    println!("{p}, base edge m = {}", fmt_rational(dec.m()));
    for u in [rat(1, 2), rat(5, 7), rat(1, 1000), rat(1, 1)] {
        let cert = dec.decompose(&u, 12)?;
        let ok = verify_certificate(&p, &u, &cert);
        println!(
            "u = {:>6}  x = {} ({})  y = {} ({})  bound {}  verified {ok}",
            fmt_rational(&u),
            fmt_rational(&cert.x),
            cert.word_x,
            fmt_rational(&cert.y),
            cert.word_y,
            fmt_rational(&cert.error_bound),
        );
    }
    let record = CertificateRecord::new(&p, &rat(1, 2), &dec.decompose(&rat(1, 2), 4)?);
    println!("{}", serde_json::to_string_pretty(&record)?);
    Ok(())
}
