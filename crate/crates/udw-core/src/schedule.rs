//! Delta-coupling schedules for a pair of detectors
//!
//! Two gapped detectors, A and B, couple to the field at sharply defined
//! instants. Detector A always couples twice; detector B couples once or
//! twice. A schedule records the coupling events, a common coupling
//! strength, and the two energy gaps.
//!
//! Internally every schedule is normalised to four coupling *slots*
//! `[A1, A2, B1, B2]` with per-slot strengths:
//!
//! * four distinct events → each slot at strength `λ/2`;
//! * three events (B couples once) → A's slots at `λ` and B's two slots
//!   merged at the single time, each at `λ`;
//! * two events (each detector couples once) → both pairs merged, each
//!   slot at `λ`.
//!
//! The merged conventions make the three- and two-event schedules exact
//! equal-time limits of the four-slot form.

use crate::error::{Result, UdwError};

/// Which detector a coupling event belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Detector {
    /// The detector that always couples twice.
    A,
    /// The detector whose single coupling makes the induced channel
    /// entanglement breaking.
    B,
}

impl std::fmt::Display for Detector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Detector::A => write!(f, "A"),
            Detector::B => write!(f, "B"),
        }
    }
}

/// A single sharp coupling event.
///
/// `slot` is 1 or 2 and numbers the events of one detector in
/// non-decreasing time order; a detector that couples only once uses
/// slot 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaEvent {
    /// Detector that couples at this event.
    pub detector: Detector,
    /// Coupling instant.
    pub time: f64,
    /// Per-detector event index, 1 or 2.
    pub slot: u8,
}

impl DeltaEvent {
    /// Convenience constructor.
    pub fn new(detector: Detector, time: f64, slot: u8) -> Self {
        Self {
            detector,
            time,
            slot,
        }
    }
}

/// Interaction pattern read off the time-sorted event list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// A, A, then B: B's single coupling comes last.
    Aab,
    /// A, B, A.
    Aba,
    /// B, A, A: B's single coupling comes first.
    Baa,
    /// One coupling each, A first.
    Ab,
    /// One coupling each, B first.
    Ba,
    /// Four events, A's pair strictly before B's pair.
    Aabb,
    /// Four events, B's pair nested inside A's.
    Abba,
    /// Four events, alternating starting with A.
    Abab,
    /// Four events, alternating starting with B.
    Baab,
    /// Four events, B, A, B, A.
    Baba,
    /// Four events, B's pair strictly before A's pair.
    Bbaa,
}

impl Pattern {
    /// Upper-case letter sequence, e.g. `"AABB"`.
    pub fn name(&self) -> &'static str {
        match self {
            Pattern::Aab => "AAB",
            Pattern::Aba => "ABA",
            Pattern::Baa => "BAA",
            Pattern::Ab => "AB",
            Pattern::Ba => "BA",
            Pattern::Aabb => "AABB",
            Pattern::Abba => "ABBA",
            Pattern::Abab => "ABAB",
            Pattern::Baab => "BAAB",
            Pattern::Baba => "BABA",
            Pattern::Bbaa => "BBAA",
        }
    }

    /// Number of coupling events in the pattern.
    pub fn event_count(&self) -> usize {
        self.name().len()
    }

    fn from_letters(letters: &[Detector]) -> Option<Pattern> {
        use Detector::{A, B};
        match letters {
            [A, A, B] => Some(Pattern::Aab),
            [A, B, A] => Some(Pattern::Aba),
            [B, A, A] => Some(Pattern::Baa),
            [A, B] => Some(Pattern::Ab),
            [B, A] => Some(Pattern::Ba),
            [A, A, B, B] => Some(Pattern::Aabb),
            [A, B, B, A] => Some(Pattern::Abba),
            [A, B, A, B] => Some(Pattern::Abab),
            [B, A, A, B] => Some(Pattern::Baab),
            [B, A, B, A] => Some(Pattern::Baba),
            [B, B, A, A] => Some(Pattern::Bbaa),
            _ => None,
        }
    }
}

impl std::fmt::Display for Pattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One of the four normalised coupling slots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingSlot {
    /// Detector the slot belongs to.
    pub detector: Detector,
    /// Coupling instant.
    pub time: f64,
    /// Per-slot coupling strength (see the module docs for the merging
    /// conventions).
    pub strength: f64,
}

/// Normalised four-slot view of a schedule, used by the kernel machinery.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SlotTable {
    /// Slot times indexed `[A1, A2, B1, B2]`.
    pub times: [f64; 4],
    /// Per-slot strengths in the same order.
    pub strengths: [f64; 4],
    /// Slot indices sorted by coupling time (ties broken by detector,
    /// then slot index).
    pub ascending: [usize; 4],
}

/// A validated delta-coupling schedule for the detector pair.
///
/// Invariants enforced at construction:
///
/// * between one and two events per detector, at least one each;
/// * slot numbering per detector is 1 (and 2), with slot 1 not later
///   than slot 2;
/// * all times finite, strength non-negative, gaps finite;
/// * no exact coupling-time collision *between* the two detectors
///   (equal times within one detector are allowed and represent a
///   merged pair);
/// * the time-sorted detector sequence is one of the supported
///   patterns — in particular, in three-event schedules the repeated
///   detector must be A.
#[derive(Debug, Clone)]
pub struct DeltaSchedule {
    events: Vec<DeltaEvent>,
    lambda: f64,
    gap_a: f64,
    gap_b: f64,
    pattern: Pattern,
}

impl DeltaSchedule {
    /// Validates the event list and derives the interaction pattern.
    pub fn new(events: Vec<DeltaEvent>, lambda: f64, gap_a: f64, gap_b: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(UdwError::Schedule(format!(
                "coupling strength must be finite and non-negative, got {lambda}"
            )));
        }
        for (name, g) in [("gap_a", gap_a), ("gap_b", gap_b)] {
            if !g.is_finite() {
                return Err(UdwError::Schedule(format!("{name} must be finite, got {g}")));
            }
        }
        for ev in &events {
            if !ev.time.is_finite() {
                return Err(UdwError::Schedule(format!(
                    "event time must be finite, got {} for detector {}",
                    ev.time, ev.detector
                )));
            }
            if ev.slot != 1 && ev.slot != 2 {
                return Err(UdwError::Schedule(format!(
                    "event slot must be 1 or 2, got {} for detector {}",
                    ev.slot, ev.detector
                )));
            }
        }
        for det in [Detector::A, Detector::B] {
            let slots: Vec<&DeltaEvent> = events.iter().filter(|e| e.detector == det).collect();
            match slots.len() {
                0 => {
                    return Err(UdwError::Schedule(format!(
                        "detector {det} must couple at least once"
                    )))
                }
                1 => {
                    if slots[0].slot != 1 {
                        return Err(UdwError::Schedule(format!(
                            "a single coupling of detector {det} must use slot 1"
                        )));
                    }
                }
                2 => {
                    let first = slots.iter().find(|e| e.slot == 1);
                    let second = slots.iter().find(|e| e.slot == 2);
                    match (first, second) {
                        (Some(a), Some(b)) => {
                            if a.time > b.time {
                                return Err(UdwError::Schedule(format!(
                                    "detector {det} slot 1 (t = {}) must not come after slot 2 (t = {})",
                                    a.time, b.time
                                )));
                            }
                        }
                        _ => {
                            return Err(UdwError::Schedule(format!(
                                "detector {det} couples twice and must use slots 1 and 2 exactly once"
                            )))
                        }
                    }
                }
                n => {
                    return Err(UdwError::Schedule(format!(
                        "detector {det} couples {n} times; at most two couplings are supported"
                    )))
                }
            }
        }
        for a in events.iter().filter(|e| e.detector == Detector::A) {
            for b in events.iter().filter(|e| e.detector == Detector::B) {
                if a.time == b.time {
                    return Err(UdwError::Schedule(format!(
                        "detectors A and B couple at the same instant t = {}; cross-detector \
                         coupling times must be strictly ordered",
                        a.time
                    )));
                }
            }
        }
        let mut sorted: Vec<&DeltaEvent> = events.iter().collect();
        sorted.sort_by(|x, y| {
            x.time
                .partial_cmp(&y.time)
                .unwrap()
                .then(x.detector.cmp(&y.detector))
                .then(x.slot.cmp(&y.slot))
        });
        let letters: Vec<Detector> = sorted.iter().map(|e| e.detector).collect();
        let pattern = Pattern::from_letters(&letters).ok_or_else(|| {
            let word: String = letters.iter().map(|d| d.to_string()).collect();
            UdwError::Schedule(format!(
                "unsupported interaction pattern {word}; in three-event schedules the \
                 repeated detector must be A"
            ))
        })?;
        Ok(Self {
            events,
            lambda,
            gap_a,
            gap_b,
            pattern,
        })
    }

    /// Three-event schedule: A couples at `t_a1 ≤ t_a2`, B once at `t_b`.
    pub fn three_event(
        t_a1: f64,
        t_a2: f64,
        t_b: f64,
        lambda: f64,
        gap_a: f64,
        gap_b: f64,
    ) -> Result<Self> {
        Self::new(
            vec![
                DeltaEvent::new(Detector::A, t_a1, 1),
                DeltaEvent::new(Detector::A, t_a2, 2),
                DeltaEvent::new(Detector::B, t_b, 1),
            ],
            lambda,
            gap_a,
            gap_b,
        )
    }

    /// Two-event schedule: one coupling per detector.
    pub fn two_event(t_a: f64, t_b: f64, lambda: f64, gap_a: f64, gap_b: f64) -> Result<Self> {
        Self::new(
            vec![
                DeltaEvent::new(Detector::A, t_a, 1),
                DeltaEvent::new(Detector::B, t_b, 1),
            ],
            lambda,
            gap_a,
            gap_b,
        )
    }

    /// Four-event schedule: two couplings per detector.
    pub fn four_event(
        t_a1: f64,
        t_a2: f64,
        t_b1: f64,
        t_b2: f64,
        lambda: f64,
        gap_a: f64,
        gap_b: f64,
    ) -> Result<Self> {
        Self::new(
            vec![
                DeltaEvent::new(Detector::A, t_a1, 1),
                DeltaEvent::new(Detector::A, t_a2, 2),
                DeltaEvent::new(Detector::B, t_b1, 1),
                DeltaEvent::new(Detector::B, t_b2, 2),
            ],
            lambda,
            gap_a,
            gap_b,
        )
    }

    /// The validated coupling events, in the order supplied.
    pub fn events(&self) -> &[DeltaEvent] {
        &self.events
    }

    /// Common coupling strength λ.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Energy gap of detector A.
    pub fn gap_a(&self) -> f64 {
        self.gap_a
    }

    /// Energy gap of detector B.
    pub fn gap_b(&self) -> f64 {
        self.gap_b
    }

    /// Interaction pattern derived from the time-sorted events.
    pub fn pattern(&self) -> Pattern {
        self.pattern
    }

    /// The four normalised coupling slots `[A1, A2, B1, B2]` with their
    /// per-slot strengths (see the module docs for the merging rules).
    pub fn slots(&self) -> [CouplingSlot; 4] {
        let table = self.slot_table();
        let detectors = [Detector::A, Detector::A, Detector::B, Detector::B];
        std::array::from_fn(|u| CouplingSlot {
            detector: detectors[u],
            time: table.times[u],
            strength: table.strengths[u],
        })
    }

    fn detector_times(&self, det: Detector) -> Vec<f64> {
        let mut evs: Vec<&DeltaEvent> = self.events.iter().filter(|e| e.detector == det).collect();
        evs.sort_by_key(|e| e.slot);
        evs.iter().map(|e| e.time).collect()
    }

    pub(crate) fn slot_table(&self) -> SlotTable {
        let a = self.detector_times(Detector::A);
        let b = self.detector_times(Detector::B);
        let (times, strengths) = match (a.len(), b.len()) {
            (2, 2) => {
                let half = 0.5 * self.lambda;
                ([a[0], a[1], b[0], b[1]], [half; 4])
            }
            (2, 1) => ([a[0], a[1], b[0], b[0]], [self.lambda; 4]),
            (1, 1) => ([a[0], a[0], b[0], b[0]], [self.lambda; 4]),
            _ => unreachable!("event counts validated at construction"),
        };
        let mut ascending = [0usize, 1, 2, 3];
        ascending.sort_by(|&u, &v| {
            times[u]
                .partial_cmp(&times[v])
                .unwrap()
                .then(u.cmp(&v))
        });
        SlotTable {
            times,
            strengths,
            ascending,
        }
    }
}
