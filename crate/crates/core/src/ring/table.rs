use super::{Ring, RingError};

/// Largest ring for which Cayley tables are built.
pub const TABLE_SIZE_LIMIT: u64 = 1 << 10;

/// Addition and multiplication tables over canonical element indices.
///
/// Used by the exhaustive searches, which touch the same few elements
/// millions of times.
#[derive(Debug, Clone)]
pub struct RingTable {
    ring: Ring,
    size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<Option<u32>>,
    zero: u32,
    one: u32,
    is_field: bool,
}

impl RingTable {
    pub fn new(ring: &Ring) -> Result<Self, RingError> {
        let n = ring.size();
        if n > TABLE_SIZE_LIMIT {
            return Err(RingError::SizeLimit {
                what: format!("arithmetic table for {ring}"),
                limit: TABLE_SIZE_LIMIT,
            });
        }
        let size = n as usize;
        let values: Vec<_> = (0..n).map(|i| ring.value_at(i)).collect();
        let mut add = vec![0u32; size * size];
        let mut mul = vec![0u32; size * size];
        for (i, a) in values.iter().enumerate() {
            for (j, b) in values.iter().enumerate().skip(i) {
                let s = ring.index_of(&ring.add_values(a, b)) as u32;
                let m = ring.index_of(&ring.mul_values(a, b)) as u32;
                add[i * size + j] = s;
                add[j * size + i] = s;
                mul[i * size + j] = m;
                mul[j * size + i] = m;
            }
        }
        let neg = values
            .iter()
            .map(|a| ring.index_of(&ring.neg_value(a)) as u32)
            .collect();
        let inv = values
            .iter()
            .map(|a| ring.inverse_value(a).map(|v| ring.index_of(&v) as u32))
            .collect();
        Ok(RingTable {
            ring: ring.clone(),
            size,
            add,
            mul,
            neg,
            inv,
            zero: ring.index_of(&ring.zero_value()) as u32,
            one: ring.index_of(&ring.one_value()) as u32,
            is_field: ring.is_field(),
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_field(&self) -> bool {
        self.is_field
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn inverse(&self, a: u32) -> Option<u32> {
        self.inv[a as usize]
    }

    #[inline]
    pub fn zero(&self) -> u32 {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> u32 {
        self.one
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_matches_element_arithmetic() {
        for expr in ["Z(6)", "GF(8)", "D(3)", "GF(4)xZ(3)"] {
            let r = Ring::parse(expr).unwrap();
            let t = RingTable::new(&r).unwrap();
            let els = r.elements().unwrap();
            for a in &els {
                for b in &els {
                    let (i, j) = (a.index() as u32, b.index() as u32);
                    assert_eq!(t.add(i, j) as u64, a.add(b).unwrap().index());
                    assert_eq!(t.mul(i, j) as u64, a.mul(b).unwrap().index());
                }
                assert_eq!(
                    t.inverse(a.index() as u32).map(u64::from),
                    a.inverse().map(|e| e.index())
                );
            }
            assert_eq!(t.zero() as u64, r.zero().index());
            assert_eq!(t.one() as u64, r.one().index());
        }
    }

    #[test]
    fn size_guard() {
        assert!(RingTable::new(&Ring::parse("GF(2048)").unwrap()).is_err());
    }
}
