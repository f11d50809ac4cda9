use xsf::hyp::{phi_pnu, phi_pnu_asymptotic, HypMethod};
use xsf::quad::QuadConfig;

fn main() {
    let cfg = QuadConfig::default();
    for &(b, c, p, nu) in &[
        (1.0, 2.5, 0.5, 0.0),
        (1.0, 2.5, 0.5, 1.0),
        (1.0, 2.5, 1.0, 1.0),
        (1.0, 2.5, 2.0, 1.0),
        (1.5, 3.0, 1.0, 0.5),
        (1.5, 3.0, 0.5, 0.5),
        (2.0, 4.0, 1.0, 2.0),
        (2.0, 4.0, 2.0, 2.0),
        (1.0, 3.0, 1.0, 1.0),
        (0.5, 2.0, 1.0, 1.0),
    ] {
        let mut line = format!("b={b} c={c} p={p} nu={nu}:");
        let mut ok = true;
        let mut prev = f64::INFINITY;
        for &z in &[5.0, 10.0, 20.0, 40.0] {
            let exact = phi_pnu(b, c, z, p, nu, HypMethod::Integral, &cfg).unwrap();
            let asym = phi_pnu_asymptotic(b, c, z, p, nu, &cfg).unwrap();
            let err = (asym / exact - 1.0).abs();
            line += &format!(" {err:.3e}");
            if err >= prev {
                ok = false;
            }
            prev = err;
        }
        println!("{line}  {}", if ok { "MONOTONE" } else { "not monotone" });
    }
}
