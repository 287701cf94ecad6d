use super::FiniteGroup;

/// Conjugacy classes ordered identity first, then by element order, then by
/// the smallest element index in the class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyData {
    pub classes: Vec<Vec<usize>>,
    pub representatives: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub class_of: Vec<usize>,
    /// Order of the elements in each class.
    pub element_orders: Vec<usize>,
    pub exponent: usize,
    /// `power_maps[k][c]` is the class of g^k for g in class c, k < exponent.
    pub power_maps: Vec<Vec<usize>>,
}

impl ConjugacyData {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class of g^k for g in class `c`; k may be negative.
    pub fn power(&self, c: usize, k: i64) -> usize {
        let e = self.exponent as i64;
        self.power_maps[k.rem_euclid(e) as usize][c]
    }

    /// The class containing the inverses of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.power(c, -1)
    }
}

pub fn conjugacy_classes(g: &FiniteGroup) -> ConjugacyData {
    let n = g.order();
    let conjugators: Vec<usize> = if g.generators().is_empty() {
        (0..n).collect()
    } else {
        g.generators().to_vec()
    };
    let mut seen = vec![usize::MAX; n];
    let mut raw: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if seen[start] != usize::MAX {
            continue;
        }
        let id = raw.len();
        seen[start] = id;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for &h in &conjugators {
                let y = g.conj(x, h);
                if seen[y] == usize::MAX {
                    seen[y] = id;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        raw.push(orbit);
    }
    let orders: Vec<usize> = raw.iter().map(|c| g.element_order(c[0])).collect();
    let mut perm: Vec<usize> = (0..raw.len()).collect();
    perm.sort_by_key(|&i| (orders[i], raw[i][0]));
    let classes: Vec<Vec<usize>> = perm.iter().map(|&i| raw[i].clone()).collect();
    let element_orders: Vec<usize> = perm.iter().map(|&i| orders[i]).collect();
    let mut class_of = vec![0; n];
    for (ci, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = ci;
        }
    }
    let representatives: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let exponent = element_orders.iter().fold(1, |a, &b| num_integer::lcm(a, b));
    let power_maps = (0..exponent)
        .map(|k| {
            representatives
                .iter()
                .map(|&r| class_of[g.pow(r, k as u64)])
                .collect()
        })
        .collect();
    ConjugacyData {
        class_sizes: classes.iter().map(Vec::len).collect(),
        classes,
        representatives,
        class_of,
        element_orders,
        exponent,
        power_maps,
    }
}
