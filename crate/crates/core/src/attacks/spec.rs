use std::fmt;
use std::str::FromStr;

use super::AttackError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    BottomRight,
    TopLeft,
}

impl Corner {
    pub fn code(self) -> &'static str {
        match self {
            Corner::BottomRight => "BR",
            Corner::TopLeft => "TL",
        }
    }
}

impl FromStr for Corner {
    type Err = AttackError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "BR" | "br" => Ok(Corner::BottomRight),
            "TL" | "tl" => Ok(Corner::TopLeft),
            _ => Err(AttackError::Parse(format!("unknown corner `{s}` (expected BR or TL)"))),
        }
    }
}

/// Operation family; one row of the benchmark report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AttackKind {
    Brightness,
    Contrast,
    Gamma,
    Gaussian3x3,
    SaltPepper,
    Multiplicative,
    Jpeg,
    Rotation,
    Scaling,
    Watermark,
}

impl AttackKind {
    pub const ALL: [AttackKind; 10] = [
        AttackKind::Brightness,
        AttackKind::Contrast,
        AttackKind::Gamma,
        AttackKind::Gaussian3x3,
        AttackKind::SaltPepper,
        AttackKind::Multiplicative,
        AttackKind::Jpeg,
        AttackKind::Rotation,
        AttackKind::Scaling,
        AttackKind::Watermark,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AttackKind::Brightness => "brightness",
            AttackKind::Contrast => "contrast",
            AttackKind::Gamma => "gamma",
            AttackKind::Gaussian3x3 => "gaussian3x3",
            AttackKind::SaltPepper => "salt_pepper",
            AttackKind::Multiplicative => "multiplicative",
            AttackKind::Jpeg => "jpeg",
            AttackKind::Rotation => "rotation",
            AttackKind::Scaling => "scaling",
            AttackKind::Watermark => "watermark",
        }
    }

    /// Whether the result depends on the seed.
    pub fn is_stochastic(self) -> bool {
        matches!(self, AttackKind::SaltPepper | AttackKind::Multiplicative)
    }
}

impl fmt::Display for AttackKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AttackKind {
    type Err = AttackError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AttackKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| AttackError::Parse(format!("unknown attack kind `{s}`")))
    }
}

/// One content-preserving operation with its parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AttackSpec {
    /// Additive offset `b`.
    Brightness {
        offset: f64,
    },
    /// Gain `c` about mid-grey 128.
    Contrast {
        gain: f64,
    },
    Gamma {
        gamma: f64,
    },
    Gaussian3x3 {
        sigma: f64,
    },
    /// Fraction `d` of pixels replaced by 0 or 255.
    SaltPepper {
        density: f64,
    },
    /// Speckle `p (1 + n)` with `n ~ N(0, variance)`.
    Multiplicative {
        variance: f64,
    },
    Jpeg {
        quality: u8,
    },
    /// Degrees, positive is counter-clockwise on screen.
    Rotation {
        degrees: f64,
    },
    Scaling {
        ratio: f64,
    },
    Watermark {
        opacity: f64,
        corner: Corner,
    },
}

fn check(name: &str, v: f64, lo: f64, hi: f64, lo_open: bool) -> Result<(), AttackError> {
    let ok = v.is_finite() && (if lo_open { v > lo } else { v >= lo }) && v <= hi;
    if ok {
        Ok(())
    } else {
        let open = if lo_open { "(" } else { "[" };
        Err(AttackError::OutOfRange(format!("{name}={v} outside {open}{lo}, {hi}]")))
    }
}

impl AttackSpec {
    pub fn kind(&self) -> AttackKind {
        match self {
            AttackSpec::Brightness { .. } => AttackKind::Brightness,
            AttackSpec::Contrast { .. } => AttackKind::Contrast,
            AttackSpec::Gamma { .. } => AttackKind::Gamma,
            AttackSpec::Gaussian3x3 { .. } => AttackKind::Gaussian3x3,
            AttackSpec::SaltPepper { .. } => AttackKind::SaltPepper,
            AttackSpec::Multiplicative { .. } => AttackKind::Multiplicative,
            AttackSpec::Jpeg { .. } => AttackKind::Jpeg,
            AttackSpec::Rotation { .. } => AttackKind::Rotation,
            AttackSpec::Scaling { .. } => AttackKind::Scaling,
            AttackSpec::Watermark { .. } => AttackKind::Watermark,
        }
    }

    pub fn validate(&self) -> Result<(), AttackError> {
        match *self {
            AttackSpec::Brightness { offset } => check("b", offset, -64.0, 64.0, false),
            AttackSpec::Contrast { gain } => check("c", gain, 0.25, 4.0, false),
            AttackSpec::Gamma { gamma } => check("gamma", gamma, 0.3, 3.0, false),
            AttackSpec::Gaussian3x3 { sigma } => check("sigma", sigma, 0.0, 3.0, true),
            AttackSpec::SaltPepper { density } => check("d", density, 0.0, 0.1, true),
            AttackSpec::Multiplicative { variance } => check("v", variance, 0.0, 0.1, true),
            AttackSpec::Jpeg { quality } => check("q", f64::from(quality), 1.0, 100.0, false),
            AttackSpec::Rotation { degrees } => check("theta", degrees, -180.0, 180.0, false),
            AttackSpec::Scaling { ratio } => check("s", ratio, 0.25, 4.0, false),
            AttackSpec::Watermark { opacity, .. } => check("alpha", opacity, 0.0, 1.0, true),
        }
    }

    /// Short human-readable identifier, unique within [`default_grid`].
    pub fn label(&self) -> String {
        let kind = self.kind();
        match *self {
            AttackSpec::Brightness { offset: v } | AttackSpec::Rotation { degrees: v } => {
                format!("{kind}:{v:+}")
            }
            AttackSpec::Contrast { gain: v }
            | AttackSpec::Gamma { gamma: v }
            | AttackSpec::Gaussian3x3 { sigma: v }
            | AttackSpec::SaltPepper { density: v }
            | AttackSpec::Multiplicative { variance: v }
            | AttackSpec::Scaling { ratio: v } => format!("{kind}:{v}"),
            AttackSpec::Jpeg { quality } => format!("{kind}:{quality}"),
            AttackSpec::Watermark { opacity, corner } => {
                format!("{kind}:{opacity}@{}", corner.code())
            }
        }
    }
}

/// Manifest form: `kind key=value ...`.
impl fmt::Display for AttackSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = self.kind();
        match *self {
            AttackSpec::Brightness { offset } => write!(f, "{kind} b={offset}"),
            AttackSpec::Contrast { gain } => write!(f, "{kind} c={gain}"),
            AttackSpec::Gamma { gamma } => write!(f, "{kind} gamma={gamma}"),
            AttackSpec::Gaussian3x3 { sigma } => write!(f, "{kind} sigma={sigma}"),
            AttackSpec::SaltPepper { density } => write!(f, "{kind} d={density}"),
            AttackSpec::Multiplicative { variance } => write!(f, "{kind} v={variance}"),
            AttackSpec::Jpeg { quality } => write!(f, "{kind} q={quality}"),
            AttackSpec::Rotation { degrees } => write!(f, "{kind} theta={degrees}"),
            AttackSpec::Scaling { ratio } => write!(f, "{kind} s={ratio}"),
            AttackSpec::Watermark { opacity, corner } => {
                write!(f, "{kind} alpha={opacity} corner={}", corner.code())
            }
        }
    }
}

struct Params<'a> {
    pairs: Vec<(&'a str, &'a str)>,
}

impl<'a> Params<'a> {
    fn take(&mut self, key: &str) -> Result<&'a str, AttackError> {
        let pos = self
            .pairs
            .iter()
            .position(|(k, _)| *k == key)
            .ok_or_else(|| AttackError::Parse(format!("missing parameter `{key}`")))?;
        Ok(self.pairs.remove(pos).1)
    }

    fn real(&mut self, key: &str) -> Result<f64, AttackError> {
        let raw = self.take(key)?;
        raw.parse()
            .map_err(|_| AttackError::Parse(format!("`{key}={raw}` is not a number")))
    }

    fn finish(self) -> Result<(), AttackError> {
        match self.pairs.first() {
            None => Ok(()),
            Some((k, _)) => Err(AttackError::Parse(format!("unexpected parameter `{k}`"))),
        }
    }
}

impl FromStr for AttackSpec {
    type Err = AttackError;

    /// Parses and range-checks one manifest line.
    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let mut tokens = line.split_whitespace();
        let kind: AttackKind = tokens
            .next()
            .ok_or_else(|| AttackError::Parse("empty attack spec".into()))?
            .parse()?;
        let pairs = tokens
            .map(|t| {
                t.split_once('=')
                    .ok_or_else(|| AttackError::Parse(format!("expected key=value, got `{t}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut p = Params { pairs };
        let spec = match kind {
            AttackKind::Brightness => AttackSpec::Brightness { offset: p.real("b")? },
            AttackKind::Contrast => AttackSpec::Contrast { gain: p.real("c")? },
            AttackKind::Gamma => AttackSpec::Gamma {
                gamma: p.real("gamma")?,
            },
            AttackKind::Gaussian3x3 => AttackSpec::Gaussian3x3 {
                sigma: p.real("sigma")?,
            },
            AttackKind::SaltPepper => AttackSpec::SaltPepper { density: p.real("d")? },
            AttackKind::Multiplicative => AttackSpec::Multiplicative { variance: p.real("v")? },
            AttackKind::Jpeg => {
                let q = p.real("q")?;
                if q.fract() != 0.0 || !(1.0..=100.0).contains(&q) {
                    return Err(AttackError::OutOfRange(format!("q={q} outside [1, 100]")));
                }
                AttackSpec::Jpeg { quality: q as u8 }
            }
            AttackKind::Rotation => AttackSpec::Rotation {
                degrees: p.real("theta")?,
            },
            AttackKind::Scaling => AttackSpec::Scaling { ratio: p.real("s")? },
            AttackKind::Watermark => AttackSpec::Watermark {
                opacity: p.real("alpha")?,
                corner: p.take("corner")?.parse()?,
            },
        };
        p.finish()?;
        spec.validate()?;
        Ok(spec)
    }
}

/// Parses a manifest: one spec per line, blank lines and `#` comments ignored.
pub fn parse_grid(text: &str) -> Result<Vec<AttackSpec>, AttackError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| {
            l.parse()
                .map_err(|e: AttackError| AttackError::Parse(format!("line {}: {e}", i + 1)))
        })
        .collect()
}

pub fn format_grid(grid: &[AttackSpec]) -> String {
    grid.iter().map(|s| format!("{s}\n")).collect()
}

/// The 88-operation grid across all ten kinds, in a fixed order.
pub fn default_grid() -> Vec<AttackSpec> {
    let mut grid = Vec::with_capacity(88);
    for b in [5.0, 10.0, 15.0, 20.0] {
        grid.push(AttackSpec::Brightness { offset: b });
        grid.push(AttackSpec::Brightness { offset: -b });
    }
    grid.extend([0.6, 0.7, 0.8, 0.9, 1.1, 1.2, 1.3, 1.4].map(|gain| AttackSpec::Contrast { gain }));
    grid.extend([0.6, 0.7, 0.8, 0.9, 1.1, 1.25, 1.5, 1.75].map(|gamma| AttackSpec::Gamma { gamma }));
    grid.extend([0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0].map(|sigma| AttackSpec::Gaussian3x3 { sigma }));
    grid.extend(
        [0.001, 0.002, 0.005, 0.008, 0.01, 0.012, 0.015, 0.02].map(|density| AttackSpec::SaltPepper { density }),
    );
    grid.extend(
        [0.001, 0.002, 0.005, 0.008, 0.01, 0.02, 0.05, 0.1].map(|variance| AttackSpec::Multiplicative { variance }),
    );
    grid.extend([30, 40, 50, 60, 70, 80, 90, 100].map(|quality| AttackSpec::Jpeg { quality }));
    for theta in [1.0, 2.0, 5.0, 10.0, 15.0, 30.0, 45.0, 90.0] {
        grid.push(AttackSpec::Rotation { degrees: theta });
        grid.push(AttackSpec::Rotation { degrees: -theta });
    }
    grid.extend([0.5, 0.75, 0.9, 1.1, 1.25, 1.5, 1.75, 2.0].map(|ratio| AttackSpec::Scaling { ratio }));
    for opacity in [0.3, 0.5, 0.8, 1.0] {
        for corner in [Corner::BottomRight, Corner::TopLeft] {
            grid.push(AttackSpec::Watermark { opacity, corner });
        }
    }
    grid
}
