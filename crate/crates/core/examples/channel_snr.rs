//! Per-user SNR of a hand-placed layout, and the single-user overhead value.

use pass2d::channel::{channel_coefficient, min_snr, snr_all};
use pass2d::units::to_db;
use pass2d::{PaConfiguration, Point3, RadioParams, Scenario};

fn main() -> pass2d::Result<()> {
    let radio = RadioParams::mmwave(20.0);
    println!(
        "carrier {:.0} GHz, lambda_c {:.3} mm, lambda_g {:.3} mm, eta {:.3e}",
        radio.carrier_freq_hz() / 1e9,
        radio.lambda_c() * 1e3,
        radio.lambda_g() * 1e3,
        radio.eta()
    );

    let ues = vec![
        Point3::new(-6.0, 4.0, 0.0),
        Point3::new(5.0, 5.0, 0.0),
        Point3::new(-2.0, -7.0, 0.0),
        Point3::new(7.0, -3.0, 0.0),
    ];
    let scenario = Scenario::new(ues.clone(), 20.0, radio)?;

    // one antenna above each user
    let config = PaConfiguration::new(ues.iter().map(|u| scenario.pa_at(u.x, u.y)).collect());
    for (k, (ue, snr)) in ues.iter().zip(snr_all(&config, &scenario)?).enumerate() {
        let h = channel_coefficient(ue, &config.positions[k], &scenario.feed_point(), &radio)?;
        println!("user {k}: |h| to own PA {:.3e}, SNR {:.2} dB", h.norm(), to_db(snr));
    }
    println!("min SNR {:.2} dB", to_db(min_snr(&config, &scenario)?));

    let single = Scenario::new(vec![Point3::new(0.0, 0.0, 0.0)], 20.0, radio)?;
    let overhead = PaConfiguration::new(vec![single.pa_at(0.0, 0.0)]);
    println!("one user, one PA overhead: {:.3} dB", to_db(min_snr(&overhead, &single)?));
    Ok(())
}
