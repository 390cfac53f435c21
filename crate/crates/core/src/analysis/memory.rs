use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::routing::{ceil_log2, payload_bits};

/// Routing table size over the whole network: `n² · ⌈log2 p⌉` bits.
pub fn table_memory_bits(n: usize, ports: usize) -> Result<u64> {
    if n < 2 || ports < 2 {
        return Err(Error::invalid(format!(
            "table memory needs n >= 2 and p >= 2, got n = {n}, p = {ports}"
        )));
    }
    Ok((n as u64).pow(2) * u64::from(ceil_log2(ports as u64)))
}

/// `⌈log2(n/2)⌉` with real-valued `n/2`, which equals `⌈log2 n⌉ − 1`.
fn half_bits(n: usize) -> u64 {
    u64::from(ceil_log2(n as u64)) - 1
}

fn check_n(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::invalid(format!("router memory model needs n >= 4, got {n}")));
    }
    Ok(())
}

/// Each router stores n and s2: `n · (⌈log2 n⌉ + ⌈log2(n/2)⌉)` bits.
pub fn clockwise_memory_bits(n: usize) -> Result<u64> {
    check_n(n)?;
    Ok(n as u64 * (u64::from(ceil_log2(n as u64)) + half_bits(n)))
}

/// Each router additionally stores its own label:
/// `n · (2⌈log2 n⌉ + ⌈log2(n/2)⌉)` bits.
pub fn adaptive_memory_bits(n: usize) -> Result<u64> {
    check_n(n)?;
    Ok(n as u64 * (2 * u64::from(ceil_log2(n as u64)) + half_bits(n)))
}

/// One row of the memory dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemoryReport {
    pub n: usize,
    pub payload_bits: u32,
    pub table_bits: u64,
    pub clockwise_bits: u64,
    pub adaptive_bits: u64,
}

/// All memory models for a four-port router network of `n` nodes.
pub fn memory_report(n: usize) -> Result<MemoryReport> {
    Ok(MemoryReport {
        n,
        payload_bits: payload_bits(n)?,
        table_bits: table_memory_bits(n, 4)?,
        clockwise_bits: clockwise_memory_bits(n)?,
        adaptive_bits: adaptive_memory_bits(n)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_examples() {
        assert_eq!(table_memory_bits(8, 4).unwrap(), 128);
        assert_eq!(table_memory_bits(100, 4).unwrap(), 20000);
        assert_eq!(table_memory_bits(9, 4).unwrap(), 162);
        assert_eq!(table_memory_bits(9, 5).unwrap(), 243);
        assert!(table_memory_bits(1, 4).is_err());
        assert!(table_memory_bits(8, 1).is_err());
    }

    #[test]
    fn clockwise_examples() {
        assert_eq!(clockwise_memory_bits(8).unwrap(), 40);
        assert_eq!(clockwise_memory_bits(100).unwrap(), 1300);
        assert_eq!(clockwise_memory_bits(9).unwrap(), 63);
        assert!(clockwise_memory_bits(3).is_err());
    }

    #[test]
    fn adaptive_examples() {
        assert_eq!(adaptive_memory_bits(8).unwrap(), 64);
        assert_eq!(adaptive_memory_bits(100).unwrap(), 2000);
        assert!(adaptive_memory_bits(2).is_err());
    }

    #[test]
    fn half_bits_matches_real_division() {
        for n in 4..4096usize {
            let expect = (n as f64 / 2.0).log2().ceil() as u64;
            assert_eq!(half_bits(n), expect, "n={n}");
        }
    }

    #[test]
    fn adaptive_minus_clockwise_is_label_bits() {
        for n in 4..2000 {
            let diff = adaptive_memory_bits(n).unwrap() - clockwise_memory_bits(n).unwrap();
            assert_eq!(diff, n as u64 * u64::from(payload_bits(n).unwrap()));
        }
    }

    #[test]
    fn models_strictly_increase() {
        let mut prev = memory_report(4).unwrap();
        for n in 5..3000 {
            let cur = memory_report(n).unwrap();
            assert!(cur.table_bits > prev.table_bits);
            assert!(cur.clockwise_bits > prev.clockwise_bits);
            assert!(cur.adaptive_bits > prev.adaptive_bits);
            prev = cur;
        }
    }
}
