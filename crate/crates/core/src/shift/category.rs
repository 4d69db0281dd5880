use std::collections::BTreeMap;
use std::fmt;

use super::ShiftError;

/// Default number of rule firings allowed while normalizing one word.
pub const DEFAULT_REWRITE_BUDGET: usize = 10_000;

/// Name of an object of the base category.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectId(String);

impl ObjectId {
    pub fn new(name: impl Into<String>) -> Self {
        ObjectId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A generating morphism `name: dom -> cod`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub name: String,
    pub dom: ObjectId,
    pub cod: ObjectId,
    /// Marks the distinguished ♯ endomorphism of `dom`.
    pub is_sharp: bool,
}

impl Generator {
    fn display_name(&self) -> &str {
        if self.is_sharp {
            "♯"
        } else {
            &self.name
        }
    }
}

/// A morphism of a free category: generators written in juxtaposition order,
/// so `[F, g]` is "F after g" and the rightmost generator is applied first.
///
/// The empty word is the identity of `dom` (which then equals `cod`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    generators: Vec<Generator>,
    dom: ObjectId,
    cod: ObjectId,
}

impl Word {
    pub fn identity(object: ObjectId) -> Self {
        Word {
            generators: Vec::new(),
            dom: object.clone(),
            cod: object,
        }
    }

    pub fn generator(g: Generator) -> Self {
        Word {
            dom: g.dom.clone(),
            cod: g.cod.clone(),
            generators: vec![g],
        }
    }

    /// Builds a word from generators in written order, checking that every
    /// adjacent pair chains.
    pub fn from_generators(generators: Vec<Generator>) -> Result<Self, ShiftError> {
        let (Some(first), Some(last)) = (generators.first(), generators.last()) else {
            return Err(ShiftError::EmptyWithoutObject);
        };
        for pair in generators.windows(2) {
            if pair[0].dom != pair[1].cod {
                return Err(ShiftError::ChainMismatch {
                    after: pair[0].name.clone(),
                    before: pair[1].name.clone(),
                });
            }
        }
        Ok(Word {
            dom: last.dom.clone(),
            cod: first.cod.clone(),
            generators,
        })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn dom(&self) -> &ObjectId {
        &self.dom
    }

    pub fn cod(&self) -> &ObjectId {
        &self.cod
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    /// Same as [`Word::is_identity`].
    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_self_morphism(&self) -> bool {
        self.dom == self.cod
    }

    /// Unnormalized composite `after · before`.
    pub fn concat(after: &Word, before: &Word) -> Result<Word, ShiftError> {
        if after.dom != before.cod {
            return Err(ShiftError::ChainMismatch {
                after: after.to_string(),
                before: before.to_string(),
            });
        }
        let mut generators = after.generators.clone();
        generators.extend(before.generators.iter().cloned());
        Ok(Word {
            generators,
            dom: before.dom.clone(),
            cod: after.cod.clone(),
        })
    }

    /// Generator names in written order.
    pub fn names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.name.as_str()).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return f.write_str("ε");
        }
        let mut i = 0;
        while i < self.generators.len() {
            let g = &self.generators[i];
            let run = self.generators[i..].iter().take_while(|h| *h == g).count();
            f.write_str(g.display_name())?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// One position of a rewrite template.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pattern {
    Gen(Generator),
    /// Matches any single generator; repeated holes must bind the same one.
    Hole(String),
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Gen(g) => f.write_str(g.display_name()),
            Pattern::Hole(h) => write!(f, "?{h}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub pattern: Vec<Pattern>,
    pub replacement: Vec<Pattern>,
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |p: &[Pattern]| {
            if p.is_empty() {
                "ε".to_string()
            } else {
                p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
            }
        };
        write!(f, "{} => {}", side(&self.pattern), side(&self.replacement))
    }
}

impl RewriteRule {
    pub fn new(pattern: Vec<Pattern>, replacement: Vec<Pattern>) -> Result<Self, ShiftError> {
        if pattern.is_empty() {
            return Err(ShiftError::InvalidRule("empty pattern".into()));
        }
        for p in &replacement {
            if let Pattern::Hole(h) = p {
                let bound = pattern
                    .iter()
                    .any(|q| matches!(q, Pattern::Hole(k) if k == h));
                if !bound {
                    return Err(ShiftError::InvalidRule(format!(
                        "hole ?{h} does not occur in the pattern"
                    )));
                }
            }
        }
        let rule = RewriteRule {
            pattern,
            replacement,
        };
        rule.check_ground_types()?;
        Ok(rule)
    }

    // Only hole-free sides can be typed ahead of time.
    fn check_ground_types(&self) -> Result<(), ShiftError> {
        let ground = |side: &[Pattern]| -> Option<Vec<Generator>> {
            side.iter()
                .map(|p| match p {
                    Pattern::Gen(g) => Some(g.clone()),
                    Pattern::Hole(_) => None,
                })
                .collect()
        };
        let Some(pat) = ground(&self.pattern) else {
            return Ok(());
        };
        let lhs = Word::from_generators(pat)
            .map_err(|e| ShiftError::InvalidRule(format!("pattern {e}")))?;
        match ground(&self.replacement) {
            Some(rep) if rep.is_empty() => {
                if !lhs.is_self_morphism() {
                    return Err(ShiftError::RuleTypeMismatch(self.to_string()));
                }
            }
            Some(rep) => {
                let rhs = Word::from_generators(rep)
                    .map_err(|e| ShiftError::InvalidRule(format!("replacement {e}")))?;
                if rhs.dom != lhs.dom || rhs.cod != lhs.cod {
                    return Err(ShiftError::RuleTypeMismatch(self.to_string()));
                }
            }
            None => {}
        }
        Ok(())
    }

    fn match_at<'w>(&self, word: &'w [Generator], at: usize) -> Option<BTreeMap<&str, &'w Generator>> {
        let window = word.get(at..at + self.pattern.len())?;
        let mut binding: BTreeMap<&str, &Generator> = BTreeMap::new();
        for (p, g) in self.pattern.iter().zip(window) {
            match p {
                Pattern::Gen(q) => {
                    if q != g {
                        return None;
                    }
                }
                Pattern::Hole(h) => match binding.get(h.as_str()) {
                    Some(prev) if *prev != g => return None,
                    Some(_) => {}
                    None => {
                        binding.insert(h.as_str(), g);
                    }
                },
            }
        }
        Some(binding)
    }
}

/// A finitely presented category: objects, generators, and a rule set
/// giving the defined compositions. With no rules the category is free.
#[derive(Clone, Debug, Default)]
pub struct Category {
    objects: Vec<ObjectId>,
    generators: BTreeMap<String, Generator>,
    rules: Vec<RewriteRule>,
    budget: Option<usize>,
}

impl Category {
    pub fn new() -> Self {
        Self::default()
    }

    /// One object `O` with its sharp generator `♯` and nothing else.
    pub fn simplest() -> Self {
        let mut cat = Category::new();
        cat.add_object("O").expect("fresh category");
        cat.add_sharp("♯", "O").expect("fresh category");
        cat
    }

    pub fn add_object(&mut self, name: &str) -> Result<ObjectId, ShiftError> {
        let id = ObjectId::new(name);
        if self.objects.contains(&id) {
            return Err(ShiftError::DuplicateObject(name.to_string()));
        }
        self.objects.push(id.clone());
        Ok(id)
    }

    pub fn add_generator(&mut self, name: &str, dom: &str, cod: &str) -> Result<Generator, ShiftError> {
        self.insert_generator(name, dom, cod, false)
    }

    pub fn add_sharp(&mut self, name: &str, object: &str) -> Result<Generator, ShiftError> {
        if self.sharp_at(&ObjectId::new(object)).is_some() {
            return Err(ShiftError::DuplicateSharp(object.to_string()));
        }
        self.insert_generator(name, object, object, true)
    }

    fn insert_generator(&mut self, name: &str, dom: &str, cod: &str, is_sharp: bool) -> Result<Generator, ShiftError> {
        let name = &name.replace('#', "♯");
        validate_name(name)?;
        if self.generators.contains_key(name) {
            return Err(ShiftError::DuplicateGenerator(name.to_string()));
        }
        let dom = self.object(dom)?;
        let cod = self.object(cod)?;
        let g = Generator {
            name: name.to_string(),
            dom,
            cod,
            is_sharp,
        };
        self.generators.insert(name.to_string(), g.clone());
        Ok(g)
    }

    pub fn add_rule(&mut self, rule: RewriteRule) {
        self.rules.push(rule);
    }

    pub fn set_budget(&mut self, budget: usize) {
        self.budget = Some(budget);
    }

    pub fn budget(&self) -> usize {
        self.budget.unwrap_or(DEFAULT_REWRITE_BUDGET)
    }

    pub fn objects(&self) -> &[ObjectId] {
        &self.objects
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.generators.values()
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn object(&self, name: &str) -> Result<ObjectId, ShiftError> {
        self.objects
            .iter()
            .find(|o| o.as_str() == name)
            .cloned()
            .ok_or_else(|| ShiftError::UnknownObject(name.to_string()))
    }

    pub fn get(&self, name: &str) -> Result<&Generator, ShiftError> {
        self.generators
            .get(name)
            .ok_or_else(|| ShiftError::UnknownGenerator(name.to_string()))
    }

    pub fn sharp_at(&self, object: &ObjectId) -> Option<&Generator> {
        self.generators.values().find(|g| g.is_sharp && &g.dom == object)
    }

    pub fn word(&self, names: &[&str]) -> Result<Word, ShiftError> {
        let gens = names
            .iter()
            .map(|n| self.get(n).cloned())
            .collect::<Result<Vec<_>, _>>()?;
        Word::from_generators(gens)
    }

    pub fn identity(&self, object: &str) -> Result<Word, ShiftError> {
        Ok(Word::identity(self.object(object)?))
    }

    /// `after · before`, normalized.
    pub fn compose(&self, after: &Word, before: &Word) -> Result<Word, ShiftError> {
        let raw = Word::concat(after, before)?;
        self.normalize(&raw)
    }

    /// Exhaustive leftmost rule application; the earliest position wins,
    /// ties broken by rule order.
    pub fn normalize(&self, word: &Word) -> Result<Word, ShiftError> {
        let budget = self.budget();
        let mut gens = word.generators.clone();
        let mut steps = 0usize;
        'outer: loop {
            for at in 0..gens.len() {
                for rule in &self.rules {
                    let Some(binding) = rule.match_at(&gens, at) else {
                        continue;
                    };
                    if steps == budget {
                        return Err(ShiftError::RewriteBudgetExceeded { budget });
                    }
                    steps += 1;
                    let replacement: Vec<Generator> = rule
                        .replacement
                        .iter()
                        .map(|p| match p {
                            Pattern::Gen(g) => g.clone(),
                            Pattern::Hole(h) => binding[h.as_str()].clone(),
                        })
                        .collect();
                    let span = &gens[at..at + rule.pattern.len()];
                    let (seg_dom, seg_cod) = (&span[span.len() - 1].dom, &span[0].cod);
                    let typed = match Word::from_generators(replacement.clone()) {
                        Ok(w) => &w.dom == seg_dom && &w.cod == seg_cod,
                        Err(ShiftError::EmptyWithoutObject) => seg_dom == seg_cod,
                        Err(_) => false,
                    };
                    if !typed {
                        return Err(ShiftError::RuleTypeMismatch(rule.to_string()));
                    }
                    gens.splice(at..at + rule.pattern.len(), replacement);
                    continue 'outer;
                }
            }
            break;
        }
        if gens.is_empty() {
            return Ok(Word::identity(word.dom.clone()));
        }
        Word::from_generators(gens)
    }

    /// Parses a word written in juxtaposition: generator names matched
    /// longest-first, optional `^k` exponents, whitespace ignored. `ε` is the
    /// identity of the sole object and `1_X` the identity of `X`. A bare `♯`
    /// (or `#`) resolves to the sharp of the object it sits at.
    pub fn parse_word(&self, text: &str) -> Result<Word, ShiftError> {
        let items = self.tokenize(text, false)?;
        let mut tokens = Vec::new();
        let mut identity = None;
        for item in items {
            match item {
                Token::Identity(obj) => identity = Some(obj),
                Token::Name(name, k) => tokens.extend(std::iter::repeat_n(name, k)),
                Token::Hole(h) => return Err(ShiftError::Parse(format!("unexpected hole ?{h}"))),
            }
        }
        if tokens.is_empty() {
            let obj = match identity {
                Some(Some(obj)) => obj,
                _ => match self.objects.as_slice() {
                    [only] => only.clone(),
                    _ => return Err(ShiftError::EmptyWithoutObject),
                },
            };
            return Ok(Word::identity(obj));
        }
        let gens = self.resolve_sharps(&tokens)?;
        let word = Word::from_generators(gens)?;
        if let Some(Some(obj)) = identity {
            // `1_X` alongside generators is only allowed where it chains.
            if obj != word.dom && obj != word.cod {
                return Err(ShiftError::ChainMismatch {
                    after: word.to_string(),
                    before: format!("1_{obj}"),
                });
            }
        }
        Ok(word)
    }

    /// Parses one side of a rewrite rule; `?name` is a hole.
    pub fn parse_template(&self, text: &str) -> Result<Vec<Pattern>, ShiftError> {
        let mut out = Vec::new();
        for item in self.tokenize(text, true)? {
            match item {
                Token::Identity(_) => {}
                Token::Hole(h) => out.push(Pattern::Hole(h)),
                Token::Name(name, k) => {
                    let g = if name == BARE_SHARP {
                        self.only_sharp().ok_or(ShiftError::AmbiguousSharp)?.clone()
                    } else {
                        self.get(&name)?.clone()
                    };
                    out.extend(std::iter::repeat_n(Pattern::Gen(g), k));
                }
            }
        }
        Ok(out)
    }

    pub fn parse_rule(&self, text: &str) -> Result<RewriteRule, ShiftError> {
        let text = text.replace('⇒', "=>");
        let (lhs, rhs) = text
            .split_once("=>")
            .ok_or_else(|| ShiftError::Parse(format!("rule without '=>': {text}")))?;
        RewriteRule::new(self.parse_template(lhs)?, self.parse_template(rhs)?)
    }

    fn only_sharp(&self) -> Option<&Generator> {
        let mut sharps = self.generators.values().filter(|g| g.is_sharp);
        let first = sharps.next()?;
        sharps.next().is_none().then_some(first)
    }

    fn tokenize(&self, text: &str, allow_holes: bool) -> Result<Vec<Token>, ShiftError> {
        let text = text.replace('#', "♯");
        let mut rest = text.trim_start();
        let mut out = Vec::new();
        while !rest.is_empty() {
            if let Some(after) = rest.strip_prefix('?') {
                if !allow_holes {
                    return Err(ShiftError::Parse(format!("holes are not allowed here: {text}")));
                }
                let len = after
                    .find(|c: char| !(c.is_alphanumeric() || c == '_'))
                    .unwrap_or(after.len());
                if len == 0 {
                    return Err(ShiftError::Parse("empty hole name".into()));
                }
                out.push(Token::Hole(after[..len].to_string()));
                rest = after[len..].trim_start();
                continue;
            }
            if let Some(after) = rest.strip_prefix('ε') {
                out.push(Token::Identity(None));
                rest = after.trim_start();
                continue;
            }
            if let Some(after) = rest.strip_prefix("1_") {
                let obj = self
                    .objects
                    .iter()
                    .filter(|o| after.starts_with(o.as_str()))
                    .max_by_key(|o| o.as_str().len())
                    .ok_or_else(|| ShiftError::Parse(format!("unknown identity in {text}")))?;
                out.push(Token::Identity(Some(obj.clone())));
                rest = after[obj.as_str().len()..].trim_start();
                continue;
            }
            let name = self
                .generators
                .keys()
                .map(String::as_str)
                .chain(std::iter::once(BARE_SHARP))
                .filter(|n| rest.starts_with(n))
                .max_by_key(|n| n.len())
                .ok_or_else(|| ShiftError::Parse(format!("no generator matches at '{rest}'")))?;
            rest = &rest[name.len()..];
            let mut power = 1;
            if let Some(after) = rest.strip_prefix('^') {
                let digits = after.find(|c: char| !c.is_ascii_digit()).unwrap_or(after.len());
                power = after[..digits]
                    .parse::<usize>()
                    .map_err(|_| ShiftError::Parse(format!("bad exponent in {text}")))?;
                if power > MAX_PARSED_POWER {
                    return Err(ShiftError::Parse(format!("exponent {power} is too large")));
                }
                rest = &after[digits..];
            }
            out.push(Token::Name(name.to_string(), power));
            rest = rest.trim_start();
        }
        Ok(out)
    }

    fn resolve_sharps(&self, names: &[String]) -> Result<Vec<Generator>, ShiftError> {
        let concrete: Vec<Option<Generator>> = names
            .iter()
            .map(|n| {
                if n == BARE_SHARP {
                    Ok(self.get(n).ok().cloned().or_else(|| self.only_sharp().cloned()))
                } else {
                    self.get(n).cloned().map(Some)
                }
            })
            .collect::<Result<_, _>>()?;
        let mut out = Vec::with_capacity(names.len());
        for (i, slot) in concrete.iter().enumerate() {
            if let Some(g) = slot {
                out.push(g.clone());
                continue;
            }
            // Nearest concrete generator to the right fixes the object via its
            // codomain; failing that, the nearest to the left via its domain.
            let object = concrete[i + 1..]
                .iter()
                .flatten()
                .next()
                .map(|g| g.cod.clone())
                .or_else(|| concrete[..i].iter().rev().flatten().next().map(|g| g.dom.clone()))
                .ok_or(ShiftError::AmbiguousSharp)?;
            let sharp = self
                .sharp_at(&object)
                .ok_or_else(|| ShiftError::NoSharpGenerator(object.to_string()))?;
            out.push(sharp.clone());
        }
        Ok(out)
    }
}

const BARE_SHARP: &str = "♯";
const MAX_PARSED_POWER: usize = 1 << 20;

enum Token {
    Name(String, usize),
    Hole(String),
    Identity(Option<ObjectId>),
}

fn validate_name(name: &str) -> Result<(), ShiftError> {
    let bad = name.is_empty()
        || name == "1"
        || name == "ε"
        || name.starts_with("1_")
        || name.chars().any(|c| c.is_whitespace() || matches!(c, '^' | '?'))
        || name.contains("->")
        || name.contains("=>");
    if bad {
        return Err(ShiftError::InvalidName(name.to_string()));
    }
    Ok(())
}
