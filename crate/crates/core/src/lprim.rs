//! l-primitivity, decided on the finite tuple state `(sⁿ({b}))_{b∈A_l}`.

use std::collections::HashMap;

use crate::growth::LetterClassification;
use crate::reach::set_map;
use crate::substitution::Substitution;
use crate::word::LetterSet;

/// The recurrent part of the tuple trajectory when coverage never happens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPrimRefutation {
    /// Tuples `(sⁿ({b}))_b` for `n` ranging over one period, starting at
    /// `n = preperiod + 1`.
    pub cycle: Vec<Vec<LetterSet>>,
    pub preperiod: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPrimitivityReport {
    pub l_primitive: bool,
    pub witness_n: Option<usize>,
    pub refutation: Option<LPrimRefutation>,
}

pub fn l_primitivity(sub: &Substitution, cls: &LetterClassification) -> LPrimitivityReport {
    let growing = cls.growing;
    let step = |t: &Vec<LetterSet>| -> Vec<LetterSet> {
        t.iter().map(|&f| set_map(sub, cls, f)).collect()
    };
    let mut seen: HashMap<Vec<LetterSet>, usize> = HashMap::new();
    let mut states: Vec<Vec<LetterSet>> = Vec::new();
    let mut cur = step(&growing.iter().map(LetterSet::singleton).collect());
    loop {
        let n = states.len() + 1;
        if cur.iter().all(|f| growing.is_subset(*f)) {
            return LPrimitivityReport {
                l_primitive: true,
                witness_n: Some(n),
                refutation: None,
            };
        }
        if let Some(&i) = seen.get(&cur) {
            return LPrimitivityReport {
                l_primitive: false,
                witness_n: None,
                refutation: Some(LPrimRefutation {
                    cycle: states.split_off(i),
                    preperiod: i,
                }),
            };
        }
        seen.insert(cur.clone(), states.len());
        let next = step(&cur);
        states.push(cur);
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::growth::classify_letters;

    fn report(t: &str) -> (Substitution, LPrimitivityReport) {
        let s = Substitution::parse(t).unwrap();
        let c = classify_letters(&s).unwrap();
        let r = l_primitivity(&s, &c);
        (s, r)
    }

    #[test]
    fn examples() {
        let (_, r) = report("0 -> 01\n1 -> 10");
        assert_eq!((r.l_primitive, r.witness_n), (true, Some(1)));

        let (_, r) = report("0 -> 01\n1 -> 1");
        assert_eq!((r.l_primitive, r.witness_n), (true, Some(1)));

        let (s, r) = report("a -> bb\nb -> aa");
        assert!(!r.l_primitive && r.witness_n.is_none());
        let cyc = r.refutation.unwrap().cycle;
        assert_eq!(cyc.len(), 2);
        let render = |t: &Vec<LetterSet>| t.iter().map(|f| s.render_set(*f)).collect::<Vec<_>>();
        assert_eq!(render(&cyc[0]), vec!["b", "a"]);
        assert_eq!(render(&cyc[1]), vec!["a", "b"]);
    }

    #[test]
    fn late_witness() {
        // a -> b -> c -> abc: coverage from every letter only after a few steps
        let (_, r) = report("a -> b\nb -> c\nc -> ab");
        assert!(r.l_primitive);
        let w = r.witness_n.unwrap();
        assert!(w > 1);
    }
}
