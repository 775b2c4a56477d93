use revring::format::{print_presentation, print_skew};
use revring::graded::{associated_graded, gk_estimate, is_compatible, Domain, Filtration, GradedError};
use revring::poisson::{exact_bracket, is_poisson_point, PlaneBracket, PLANE, XYZ};
use revring::presets::{self, Preset};
use revring::suite;
use revring::{CommPoly, NCPoly, ReductionSystem, RewriteError, ScalarRing, SkewError};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{source, Command, Failure, Outcome};

fn rewrite(e: RewriteError) -> Failure {
    match e {
        RewriteError::StepCap(_) | RewriteError::Cycle => Failure::Runtime(e.to_string()),
        _ => Failure::Usage(e.to_string()),
    }
}

fn graded(e: GradedError) -> Failure {
    match e {
        GradedError::Rewrite(r) => rewrite(r),
        other => Failure::Usage(other.to_string()),
    }
}

fn skew(e: SkewError) -> Failure {
    Failure::Usage(e.to_string())
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn parse(sys: &ReductionSystem, text: &str) -> Result<NCPoly, Failure> {
    sys.parse(text).map_err(usage)
}

pub fn run(cmd: Command, allow: bool) -> Outcome {
    match cmd {
        Command::Check { source } => check(&source::system(&source, allow)?),
        Command::Nf { source, expr, strategy } => {
            let sys = source::system(&source, allow)?;
            let nf = sys.normal_form_with(&parse(&sys, &expr)?, strategy).map_err(rewrite)?;
            println!("{}", sys.show(&nf));
            Ok(true)
        }
        Command::Basis { source, degree, degrees } => {
            let sys = source::system(&source, allow)?;
            let d = source::degrees(&sys, Some(degrees.as_deref().unwrap_or_default()))?;
            let rep = sys.check_confluence().map_err(rewrite)?;
            if !rep.confluent {
                println!("NOTE the system is not confluent; these words span but need not be independent");
            }
            let words = sys.irreducible_words(&d, degree).map_err(rewrite)?;
            for w in &words {
                println!("{}", sys.show_word(w));
            }
            println!("COUNT {}", words.len());
            Ok(true)
        }
        Command::Central { source, expr } => {
            let sys = source::system(&source, allow)?;
            central(&sys, &parse(&sys, &expr)?)
        }
        Command::Commutator { source, a, b } => {
            let sys = source::system(&source, allow)?;
            let c = parse(&sys, &a)?.commutator(&parse(&sys, &b)?);
            println!("{}", sys.show(&sys.normal_form(&c).map_err(rewrite)?));
            Ok(true)
        }
        Command::Gr { source, degrees, probe } => gr(&source::system(&source, allow)?, &degrees, &probe),
        Command::Growth { source, degrees, max } => growth(&source, allow, degrees.as_deref(), max),
        Command::Pbracket { potential, structure, laurent, point, g, h } => {
            pbracket(potential.as_deref(), structure.as_deref(), &laurent, point.as_deref(), g.as_deref(), h.as_deref())
        }
        Command::Qbracket { source, u, v, at } => {
            let sys = source::system(&source, allow)?;
            let at = ScalarRing::rational().parse(&at).ok().and_then(|s| s.as_rational()).ok_or_else(|| usage(format!("'{at}' is not rational")))?;
            let b = sys.induced_poisson_bracket(&parse(&sys, &u)?, &parse(&sys, &v)?, &at).map_err(rewrite)?;
            println!("{}", b.show(sys.alg.alphabet.names()));
            Ok(true)
        }
        Command::Rev { source, samples, seed } => rev(&source::skew(&source, allow)?, samples, seed),
        Command::Hom { skew: sk, system, images, probe } => {
            hom(&source::skew(&sk, allow)?, &source::system(&system, allow)?, &images, &probe)
        }
        Command::Preset { name, list } => {
            if list || name.is_none() {
                for n in presets::NAMES {
                    println!("{n}");
                }
                return Ok(true);
            }
            match presets::by_name(name.as_deref().unwrap_or_default(), allow).map_err(usage)? {
                Preset::System(s) => print!("{}", print_presentation(&s)),
                Preset::Skew(c) => print!("{}", print_skew(&c)),
            }
            Ok(true)
        }
        Command::PaperSuite { strategy, only } => {
            let ids: Vec<u32> = if only.is_empty() { (1..=suite::TITLES.len() as u32).collect() } else { only };
            if let Some(bad) = ids.iter().find(|&&i| i == 0 || i as usize > suite::TITLES.len()) {
                return Err(usage(format!("no criterion {bad}")));
            }
            let mut passed = 0;
            for &id in &ids {
                let c = suite::run(id, strategy);
                print!("{c}");
                passed += usize::from(c.passed());
            }
            let all = passed == ids.len();
            println!("SUITE {} {passed}/{}", if all { "PASS" } else { "FAIL" }, ids.len());
            Ok(all)
        }
    }
}

fn check(sys: &ReductionSystem) -> Outcome {
    let rep = sys.check_confluence().map_err(rewrite)?;
    print!("{}", rep.render(sys));
    Ok(rep.confluent)
}

fn central(sys: &ReductionSystem, c: &NCPoly) -> Outcome {
    let v = sys.is_central(c).map_err(rewrite)?;
    match v.witness {
        None => println!("CENTRAL"),
        Some((g, nf)) => println!("NOT-CENTRAL [{}, -] = {}", sys.alg.alphabet.name(g), sys.show(&nf)),
    }
    Ok(v.central)
}

fn gr(sys: &ReductionSystem, degrees: &str, probes: &[String]) -> Outcome {
    let d = source::degrees(sys, Some(degrees))?;
    let compat = is_compatible(sys, &d).map_err(graded)?;
    if !compat.compatible() {
        for v in &compat.violations {
            println!(
                "FAIL relation {}: {} has degree {} above the leading degree {}",
                v.relation + 1,
                sys.show_word(&v.word),
                v.degree,
                v.lead_degree
            );
        }
        return Ok(false);
    }
    let g = associated_graded(sys, &d).map_err(graded)?.system;
    print!("{}", print_presentation(&g));
    let rep = g.check_confluence().map_err(rewrite)?;
    let mut ok = rep.confluent;
    println!("{} {}", if rep.confluent { "OK" } else { "FAIL" }, if rep.confluent { "CONFLUENT" } else { "NOT-CONFLUENT" });
    for p in probes {
        let v = g.is_central(&parse(&g, p)?).map_err(rewrite)?;
        println!("{} {p} {}", if v.central { "OK" } else { "FAIL" }, if v.central { "CENTRAL" } else { "NOT-CENTRAL" });
        ok &= v.central;
    }
    Ok(ok)
}

fn growth(spec: &str, allow: bool, degrees: Option<&str>, max: usize) -> Outcome {
    let filt = match source::load(spec, allow)? {
        Preset::System(sys) => {
            let d = source::degrees(&sys, degrees)?;
            Filtration::from_system(&sys, &d).map_err(graded)?
        }
        Preset::Skew(ctx) => {
            if degrees.is_some() {
                return Err(usage("skew contexts use unit weights; --degrees does not apply"));
            }
            let var = if ctx.base.laurent { Domain::TwoSided } else { Domain::OneSided };
            Filtration::new(vec![(1, var), (1, Domain::TwoSided)])
        }
    };
    let c = filt.dimensions(max).map_err(graded)?;
    for (n, v) in c.iter().enumerate() {
        println!("{n},{v}");
    }
    let e = gk_estimate(&c).map_err(graded)?;
    for (n, s) in &e.slopes {
        println!("SLOPE {n} {s:.6}");
    }
    println!("GK-ESTIMATE {:.6}", e.estimate);
    Ok(true)
}

fn pbracket(potential: Option<&str>, structure: Option<&str>, laurent: &str, point: Option<&str>, g: Option<&str>, h: Option<&str>) -> Outcome {
    if let Some(f) = potential {
        let f = CommPoly::parse(&XYZ, f).map_err(usage)?;
        if let Some(pt) = point {
            let vals = pt
                .split(',')
                .map(|s| ScalarRing::rational().parse(s.trim()).ok().and_then(|v| v.as_rational()))
                .collect::<Option<Vec<_>>>()
                .filter(|v| v.len() == 3)
                .ok_or_else(|| usage(format!("expected three rationals, got '{pt}'")))?;
            let ok = is_poisson_point(&f, &[vals[0].clone(), vals[1].clone(), vals[2].clone()]).map_err(usage)?;
            println!("{}", if ok { "POISSON-POINT" } else { "NOT-POISSON-POINT" });
            return Ok(ok);
        }
        let (g, h) = (CommPoly::parse(&XYZ, g.unwrap_or_default()).map_err(usage)?, CommPoly::parse(&XYZ, h.unwrap_or_default()).map_err(usage)?);
        println!("{}", exact_bracket(&f, &g, &h).show(&XYZ));
        return Ok(true);
    }
    let s = CommPoly::parse(&PLANE, structure.unwrap_or_default()).map_err(usage)?;
    let mut flags = [false; 2];
    for v in laurent.split(',').map(str::trim).filter(|v| !v.is_empty()) {
        let i = PLANE.iter().position(|&p| p == v).ok_or_else(|| usage(format!("unknown plane variable '{v}'")))?;
        flags[i] = true;
    }
    let plane = PlaneBracket::new(s, flags).map_err(usage)?;
    let (g, h) = (CommPoly::parse(&PLANE, g.unwrap_or_default()).map_err(usage)?, CommPoly::parse(&PLANE, h.unwrap_or_default()).map_err(usage)?);
    println!("{}", plane.bracket(&g, &h).map_err(usage)?.show(&PLANE));
    Ok(true)
}

fn rev(ctx: &revring::ReversingContext, samples: usize, seed: u64) -> Outcome {
    if !ctx.is_reversible() {
        println!("FAIL {}: alpha is not gamma-reversible", ctx.name);
        return Ok(false);
    }
    println!("OK {}: alpha is gamma-reversible", ctx.name);
    if samples == 0 {
        return Ok(true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..samples {
        let r = ctx.base.random(&mut rng, 4);
        let r2 = ctx.base.random(&mut rng, 4);
        bad += usize::from(!ctx.verify_s_identities(&r, &r2).map_err(skew)?.ok());
    }
    println!("{} s-identities on {samples} random pairs, {bad} failures", if bad == 0 { "OK" } else { "FAIL" });
    Ok(bad == 0)
}

fn hom(ctx: &revring::ReversingContext, sys: &ReductionSystem, images: &str, probes: &[String]) -> Outcome {
    let imgs = images.split(';').map(|t| ctx.parse(t.trim())).collect::<Result<Vec<_>, _>>().map_err(skew)?;
    let probes = probes.iter().map(|p| parse(sys, p)).collect::<Result<Vec<_>, _>>()?;
    let rep = ctx.verify_presentation_hom(sys, &imgs, &probes).map_err(skew)?;
    let line = |ok: bool, what: String, image: &revring::SkewElem| {
        if ok {
            println!("OK {what} maps to 0");
        } else {
            println!("FAIL {what} maps to {}", ctx.show(image));
        }
    };
    for (r, img) in sys.relations().iter().zip(&rep.relations) {
        line(img.is_zero(), format!("{} -> {}", sys.show_word(&r.lead), sys.show(&r.rhs)), img);
    }
    for (p, img) in probes.iter().zip(&rep.probes) {
        line(img.is_zero(), sys.show(p), img);
    }
    Ok(rep.ok())
}
