use super::config::RouterConfig;
use crate::topology::NodeId;

/// One hop of clockwise routing.
///
/// The residual `S = (dest - current) mod n` picks the direction: forward
/// while `S <= n/2`, backward otherwise. In either direction the long chord
/// is taken while the remaining distance is at least `s2`.
pub fn clockwise_step(current: NodeId, dest: NodeId, cfg: &RouterConfig) -> NodeId {
    let n = cfg.n();
    let (s1, s2) = (cfg.s1(), cfg.s2());
    let s = cfg.offset(current, dest);
    if s == 0 {
        return current;
    }
    if 2 * s <= n {
        let step = if s >= s2 { s2 } else { s1 };
        (current + step) % n
    } else {
        let back = n - s;
        let step = if back >= s2 { s2 } else { s1 };
        (current + n - step) % n
    }
}

/// Hop count of a full clockwise route for residual `s`, in closed form.
pub fn clockwise_hops(s: usize, cfg: &RouterConfig) -> usize {
    let n = cfg.n();
    let s = s % n;
    let s2 = cfg.s2();
    let residual = if 2 * s <= n { s } else { n - s };
    residual / s2 + residual % s2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing_examples() {
        let cfg = RouterConfig::new(8, 3).unwrap();
        assert_eq!(clockwise_step(0, 4, &cfg), 3);
        assert_eq!(clockwise_step(5, 5, &cfg), 5);
        assert_eq!(clockwise_step(0, 7, &cfg), 7);
        // S = 5 > 4, S' = 3 >= s2 so the chord is taken backwards.
        assert_eq!(clockwise_step(0, 5, &cfg), 5);
        assert_eq!(clockwise_step(6, 1, &cfg), 1);
    }

    #[test]
    fn unit_steps_below_s2() {
        let cfg = RouterConfig::new(16, 7).unwrap();
        assert_eq!(clockwise_step(0, 6, &cfg), 1);
        assert_eq!(clockwise_hops(6, &cfg), 6);
    }

    #[test]
    fn half_way_goes_forward() {
        let cfg = RouterConfig::new(10, 3).unwrap();
        assert_eq!(clockwise_step(0, 5, &cfg), 3);
    }
}
