//! Line-oriented scene files.
//!
//! ```text
//! field Q
//! space diag 1
//! cycle c1 = 1 | 0 | -1
//! point p1 = 2
//! op invert c1 p1
//! op reflect c1 point 3 as p2
//! ```
//!
//! Operation arguments are names or inline `point <literal>`; `as NAME`
//! stores a cycle or point result under a new name.

use std::fmt::Write as _;

use inversive::{
    affine_reflect, conjugate, desargues_involution, invert_point, map_pair_to_pair, nine_point_circle,
    polar_involution, reflect, reflect_point, BinaryQuadric, Cycle, Field, LorentzVec, NinePointCircle,
    OrthoConfig, Pencil, QuadSpace, Space, VPoint, ZeroSetVerdict,
};

use crate::parse;
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Cycle(Cycle),
    Point(VPoint),
}

/// A nine-point figure built by an `op ninepoint` line.
#[derive(Clone, Debug)]
pub struct NinePointFigure {
    pub config: OrthoConfig,
    pub circle: NinePointCircle,
}

#[derive(Clone, Debug)]
pub struct Scene {
    pub field: Field,
    pub space: Space,
    /// Named objects in declaration order.
    pub objects: Vec<(String, Object)>,
    pub figures: Vec<NinePointFigure>,
    /// One line per executed operation.
    pub output: Vec<String>,
    explicit_space: bool,
}

pub const DEFAULT_BUDGET: u64 = 20_000;

impl Scene {
    fn new() -> Scene {
        let field = Field::rationals();
        Scene {
            field,
            space: QuadSpace::standard(field, 2).expect("standard plane"),
            objects: Vec::new(),
            figures: Vec::new(),
            output: Vec::new(),
            explicit_space: false,
        }
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.iter().rev().find(|(n, _)| n == name).map(|(_, o)| o)
    }

    /// Prints the declarations that rebuild the scene's field, space and
    /// named objects.
    pub fn declarations(&self) -> String {
        let mut out = String::new();
        let diag: Vec<String> = self.space.diag().iter().map(ToString::to_string).collect();
        writeln!(out, "field {}", self.field).unwrap();
        writeln!(out, "space diag {}", diag.join(" ")).unwrap();
        for (name, obj) in &self.objects {
            match obj {
                Object::Cycle(c) => writeln!(out, "cycle {name} = {c}").unwrap(),
                Object::Point(p) => writeln!(out, "point {name} = {p}").unwrap(),
            }
        }
        out
    }
}

pub fn run_scene(text: &str) -> Result<Scene, CliError> {
    run_scene_with_budget(text, DEFAULT_BUDGET)
}

pub fn run_scene_with_budget(text: &str, budget: u64) -> Result<Scene, CliError> {
    let mut scene = Scene::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let perr = |message: String| CliError::Parse { line, message };
        let (word, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match word {
            "field" => {
                if !scene.objects.is_empty() || scene.explicit_space {
                    return Err(perr("field must come before space and objects".into()));
                }
                scene.field = parse::field(rest).map_err(perr)?;
                scene.space = QuadSpace::standard(scene.field, 2).map_err(|e| perr(e.to_string()))?;
            }
            "space" => {
                if !scene.objects.is_empty() {
                    return Err(perr("space must come before objects".into()));
                }
                scene.space = parse::space(scene.field, rest).map_err(perr)?;
                scene.explicit_space = true;
            }
            "cycle" | "point" => {
                let (name, lit) = rest
                    .split_once('=')
                    .ok_or_else(|| perr(format!("expected `{word} NAME = ...`")))?;
                let name = name.trim();
                if !is_name(name) {
                    return Err(perr(format!("bad name {name:?}")));
                }
                let obj = if word == "cycle" {
                    Object::Cycle(parse::cycle(&scene.space, lit).map_err(perr)?)
                } else {
                    Object::Point(parse::point(&scene.space, lit).map_err(perr)?)
                };
                scene.objects.push((name.to_string(), obj));
            }
            "op" => run_op(&mut scene, rest, line, budget)?,
            other => return Err(perr(format!("unknown directive {other:?}"))),
        }
    }
    Ok(scene)
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "point"
        && s != "as"
}

enum Arg {
    Cycle(Cycle),
    Point(VPoint),
    Raw(String),
}

fn run_op(scene: &mut Scene, rest: &str, line: usize, budget: u64) -> Result<(), CliError> {
    let perr = |message: String| CliError::Parse { line, message };
    let mut tokens: Vec<&str> = rest.split_whitespace().collect();
    let mut store = None;
    if tokens.len() >= 2 && tokens[tokens.len() - 2] == "as" {
        let name = tokens.pop().unwrap();
        tokens.pop();
        if !is_name(name) {
            return Err(perr(format!("bad name {name:?}")));
        }
        store = Some(name.to_string());
    }
    let Some((&verb, arg_tokens)) = tokens.split_first() else {
        return Err(perr("missing operation".into()));
    };
    let mut args = Vec::new();
    let mut shown = Vec::new();
    let mut it = arg_tokens.iter();
    while let Some(&tok) = it.next() {
        if tok == "point" {
            let lit = it.next().ok_or_else(|| perr("`point` needs a literal".into()))?;
            args.push(Arg::Point(parse::point(&scene.space, lit).map_err(perr)?));
            shown.push(format!("point {lit}"));
            continue;
        }
        shown.push(tok.to_string());
        match scene.get(tok) {
            Some(Object::Cycle(c)) => args.push(Arg::Cycle(c.clone())),
            Some(Object::Point(p)) => args.push(Arg::Point(p.clone())),
            None if verb == "ninepoint" => args.push(Arg::Raw(tok.to_string())),
            None => return Err(perr(format!("unknown name {tok:?}"))),
        }
    }
    let dom = |e: inversive::Error| CliError::domain(format!("op {verb} (line {line})"), e);
    let cycle = |a: &Arg| match a {
        Arg::Cycle(c) => Ok(c.clone()),
        _ => Err(perr(format!("{verb} expects a cycle here"))),
    };
    let point = |a: &Arg| match a {
        Arg::Point(p) => Ok(p.clone()),
        _ => Err(perr(format!("{verb} expects a point here"))),
    };
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(perr(format!("{verb} takes {n} arguments, got {}", args.len())))
        }
    };
    let mut result: Option<Object> = None;
    let text = match verb {
        "reflect" => {
            arity(2)?;
            let m = cycle(&args[0])?;
            match &args[1] {
                Arg::Cycle(x) => {
                    let r = reflect(&m, x).map_err(dom)?;
                    result = Some(Object::Cycle(r.clone()));
                    r.to_string()
                }
                Arg::Point(v) => {
                    let r = reflect_point(&m, v).map_err(dom)?;
                    result = Some(Object::Point(r.clone()));
                    r.to_string()
                }
                Arg::Raw(_) => unreachable!("names resolve outside ninepoint"),
            }
        }
        "invert" | "affine" => {
            arity(2)?;
            let (m, v) = (cycle(&args[0])?, point(&args[1])?);
            let r = if verb == "invert" { invert_point(&m, &v) } else { affine_reflect(&m, &v) }.map_err(dom)?;
            result = Some(Object::Point(r.clone()));
            r.to_string()
        }
        "pairing" => {
            arity(2)?;
            cycle(&args[0])?.pairing(&cycle(&args[1])?).map_err(dom)?.to_string()
        }
        "classify" => {
            arity(1)?;
            format!("{:?}", cycle(&args[0])?.classify().map_err(dom)?)
        }
        "center" => {
            arity(1)?;
            let cs = cycle(&args[0])?.center_and_size().map_err(dom)?;
            format!("center {} size {}", cs.center, cs.size)
        }
        "zeroset" => {
            arity(1)?;
            match cycle(&args[0])?.zero_set_nonempty(budget).map_err(dom)? {
                ZeroSetVerdict::Yes(v) => format!("nonempty, contains {v}"),
                ZeroSetVerdict::No => "empty".into(),
                ZeroSetVerdict::Unknown => "unknown within budget".into(),
            }
        }
        "pencil" => {
            arity(2)?;
            let p = Pencil::new(cycle(&args[0])?, cycle(&args[1])?).map_err(dom)?;
            let zeros = p.common_zeros(budget).map_err(dom)?;
            let pts: Vec<String> = zeros.points.iter().map(ToString::to_string).collect();
            let tail = if zeros.complete { "" } else { " (search incomplete)" };
            format!("{:?}, common zeros [{}]{tail}", p.classify(), pts.join("; "))
        }
        "conjugate" => {
            arity(2)?;
            let (m, v) = (cycle(&args[0])?, point(&args[1])?);
            let c = conjugate(&m, &v).map_err(dom)?;
            result = Some(Object::Point(c.image.clone()));
            match &c.certificate {
                Some((a, b)) => format!("{} with mirror = {a} * q({v}) + {b} * q({})", c.image, c.image),
                None => format!("{} (fixed)", c.image),
            }
        }
        "stereo" => {
            arity(1)?;
            LorentzVec::from_cycle(&cycle(&args[0])?).to_string()
        }
        "pair" => {
            arity(4)?;
            let [u, w, u2, w2] = [&args[0], &args[1], &args[2], &args[3]].map(point);
            let word = map_pair_to_pair(&u?, &w?, &u2?, &w2?, &scene.space).map_err(dom)?;
            let mirrors: Vec<String> = word.reflections().iter().map(|r| format!("[{}]", r.mirror())).collect();
            format!("word of length {}: {}", word.len(), mirrors.join(" then "))
        }
        "polar" => {
            arity(1)?;
            let q = BinaryQuadric::from_cycle(&cycle(&args[0])?).map_err(dom)?;
            moebius_text(&polar_involution(&q).map_err(dom)?)
        }
        "desargues" => {
            arity(2)?;
            let q0 = BinaryQuadric::from_cycle(&cycle(&args[0])?).map_err(dom)?;
            let q1 = BinaryQuadric::from_cycle(&cycle(&args[1])?).map_err(dom)?;
            moebius_text(&desargues_involution(&q0, &q1).map_err(dom)?)
        }
        "ninepoint" => {
            arity(3)?;
            let pts = args
                .iter()
                .map(|a| match a {
                    Arg::Raw(s) => parse::plane_point(scene.field, s).map_err(perr),
                    _ => Err(perr("ninepoint takes three plane points u,v".into())),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let cfg = OrthoConfig::new(pts[0].clone(), pts[1].clone(), pts[2].clone()).map_err(dom)?;
            let circle = nine_point_circle(&cfg).map_err(dom)?;
            let text = ninepoint_text(&cfg, &circle).map_err(dom)?;
            scene.figures.push(NinePointFigure { config: cfg, circle });
            text
        }
        other => return Err(perr(format!("unknown operation {other:?}"))),
    };
    if let Some(name) = store {
        let obj = result.ok_or_else(|| perr(format!("{verb} has no cycle or point result to store")))?;
        scene.objects.push((name, obj));
    }
    scene.output.push(format!("{verb} {} = {text}", shown.join(" ")));
    Ok(())
}

pub fn moebius_text(m: &inversive::Moebius) -> String {
    let e: Vec<String> = m.entries().iter().map(ToString::to_string).collect();
    format!("[[{}, {}], [{}, {}]]", e[0], e[1], e[2], e[3])
}

pub fn ninepoint_text(cfg: &OrthoConfig, npc: &NinePointCircle) -> inversive::Result<String> {
    let cs = npc.cycle.center_and_size()?;
    let pts: Vec<String> = npc.points.affine_points().iter().map(ToString::to_string).collect();
    let mut s = format!(
        "orthocenter {}, circle {} (center {} size {}), points {}",
        cfg.t,
        npc.cycle,
        cs.center,
        cs.size,
        pts.join("; ")
    );
    if npc.points.has_parallel_pair() {
        s.push_str(", a diagonal pair is parallel");
    }
    Ok(s)
}
