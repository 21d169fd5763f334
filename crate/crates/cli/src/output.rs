use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use golomb_core::interval::decimal_floor;

pub const DECIMALS: usize = 20;

pub fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn csv<R, I>(header: &[&str], rows: R) -> String
where
    R: IntoIterator<Item = I>,
    I: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv of utf-8 fields")
}

pub fn rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn decimal(x: &BigRational) -> String {
    decimal_floor(x, DECIMALS)
}

pub fn digits(x: &BigInt) -> usize {
    let s = x.magnitude().to_string();
    if s == "0" {
        1
    } else {
        s.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_commas() {
        let s = csv(&["a", "b"], [vec!["1".to_string(), "x, y".to_string()]]);
        assert_eq!(s, "a,b\n1,\"x, y\"\n");
    }

    #[test]
    fn integers_keep_their_denominator() {
        assert_eq!(rational(&BigRational::from_integer(6.into())), "6/1");
        assert_eq!(digits(&BigInt::from(-1234)), 4);
        assert_eq!(digits(&BigInt::from(0)), 1);
    }
}
