use std::fmt;

/// A set of project indices backed by 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ProjectSet {
    words: Vec<u64>,
}

impl ProjectSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// The set `{0, .., m-1}`.
    pub fn full(m: usize) -> Self {
        let mut set = Self::new();
        for p in 0..m {
            set.insert(p);
        }
        set
    }

    pub fn insert(&mut self, project: usize) {
        let (w, b) = (project / 64, project % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, project: usize) {
        let (w, b) = (project / 64, project % 64);
        if let Some(word) = self.words.get_mut(w) {
            *word &= !(1 << b);
        }
        self.trim();
    }

    #[inline]
    pub fn contains(&self, project: usize) -> bool {
        self.words
            .get(project / 64)
            .is_some_and(|w| w & (1 << (project % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Largest member, if any.
    pub fn max(&self) -> Option<usize> {
        self.iter().last()
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn intersection(&self, other: &ProjectSet) -> ProjectSet {
        let mut words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        while words.last() == Some(&0) {
            words.pop();
        }
        ProjectSet { words }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<usize> for ProjectSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = ProjectSet::new();
        for p in iter {
            set.insert(p);
        }
        set
    }
}

impl fmt::Debug for ProjectSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
