//! dB conversions used at input/output boundaries.

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

pub fn watts_to_dbm(watts: f64) -> f64 {
    10.0 * watts.log10() + 30.0
}

/// Linear power ratio to dB. Zero maps to negative infinity.
pub fn to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

pub fn from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_powers() {
        assert!((dbm_to_watts(20.0) - 0.1).abs() < 1e-15);
        assert!((dbm_to_watts(-80.0) - 1e-11).abs() < 1e-25);
        assert!((watts_to_dbm(1.0) - 30.0).abs() < 1e-12);
    }

    #[test]
    fn db_round_trip() {
        for v in [1e-6, 0.5, 1.0, 806.6, 1e9] {
            assert!((from_db(to_db(v)) - v).abs() <= 1e-12 * v);
        }
        assert_eq!(to_db(0.0), f64::NEG_INFINITY);
    }
}
