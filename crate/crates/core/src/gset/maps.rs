use super::GSet;
use crate::error::{Error, Result};

/// All equivariant maps between two G-sets, as point functions sorted
/// lexicographically.
#[derive(Clone, Debug)]
pub struct EquivariantMapSet {
    pub source: GSet,
    pub target: GSet,
    pub maps: Vec<Vec<usize>>,
}

impl EquivariantMapSet {
    /// A map out of an orbit `H/K` is fixed by the image of its base point,
    /// which must be `K`-fixed; maps are enumerated as one such choice per
    /// source orbit.
    pub(super) fn enumerate(source: &GSet, target: &GSet) -> Result<Self> {
        source.same_context(target)?;
        let mut per_orbit = Vec::with_capacity(source.orbits.len());
        for o in source.orbits() {
            let choices = target.fixed_points(o.stabilizer)?;
            per_orbit.push((source.transporters(o), choices));
        }
        let mut maps = Vec::new();
        if per_orbit.iter().all(|(_, c)| !c.is_empty()) {
            let mut pick = vec![0usize; per_orbit.len()];
            'outer: loop {
                let mut f = vec![0usize; source.len()];
                for ((transport, choices), &i) in per_orbit.iter().zip(&pick) {
                    let x = choices[i];
                    for &(p, h) in transport {
                        f[p] = target.act(h, x);
                    }
                }
                maps.push(f);
                let mut k = pick.len();
                loop {
                    if k == 0 {
                        break 'outer;
                    }
                    k -= 1;
                    pick[k] += 1;
                    if pick[k] < per_orbit[k].1.len() {
                        continue 'outer;
                    }
                    pick[k] = 0;
                }
            }
        }
        maps.sort();
        debug_assert!(maps.windows(2).all(|w| w[0] != w[1]));
        Ok(EquivariantMapSet {
            source: source.clone(),
            target: target.clone(),
            maps,
        })
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Position of a map in the sorted list.
    pub fn index_of(&self, f: &[usize]) -> Option<usize> {
        self.maps.binary_search_by(|m| m.as_slice().cmp(f)).ok()
    }
}

/// Checks that a map list is exactly the equivariant maps, by testing all
/// `|X|^|T|` functions. Only for tiny sets.
pub fn brute_force_maps(source: &GSet, target: &GSet) -> Result<Vec<Vec<usize>>> {
    source.same_context(target)?;
    let (n, m) = (source.len(), target.len());
    let total =
        m.checked_pow(n as u32)
            .filter(|&t| t <= 1 << 20)
            .ok_or(Error::SizeLimitExceeded {
                what: "function count",
                size: usize::MAX,
                limit: 1 << 20,
            })?;
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut f = vec![0; n];
        for x in (0..n).rev() {
            f[x] = c % m;
            c /= m;
        }
        if source.is_equivariant(target, &f) {
            out.push(f);
        }
    }
    Ok(out)
}
