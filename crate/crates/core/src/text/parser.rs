//! Recursive-descent parser producing the declaration list of a `.tm` file.

use super::lexer::{lex, Tok, Token};
use crate::chrono::ConstraintKind;
use crate::diag::{DiagCode, Diagnostic, Pos};
use crate::kernel::{ActionKind, EventMode, Mode};
use crate::logic::{AnnotatedFormula, AnnotationMode, Formula, ModeAssignment};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ident {
    pub text: String,
    pub pos: Pos,
}

/// `Thimac.Sub.action`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathRef {
    pub thimacs: Vec<String>,
    pub kind: ActionKind,
    pub pos: Pos,
}

impl PathRef {
    pub fn thimac_id(&self) -> String {
        self.thimacs.join(".")
    }

    pub fn action_id(&self) -> String {
        format!("{}.{}", self.thimac_id(), self.kind)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThimacDecl {
    pub name: Ident,
    pub actions: Vec<(ActionKind, Pos)>,
    pub children: Vec<ThimacDecl>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChronoStmt {
    Node(Ident),
    Sequence(Ident, Ident),
    Trigger(Ident, Ident),
    Alternative {
        source: Ident,
        targets: Vec<Ident>,
        triggered: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Thimac(ThimacDecl),
    Flow { from: PathRef, to: PathRef },
    Trigger { from: PathRef, to: PathRef },
    Region { name: Ident, nodes: Vec<PathRef> },
    Atom { name: Ident, region: Ident },
    Event {
        name: Ident,
        time: u64,
        over: Option<Ident>,
        constituents: Vec<(EventMode, Ident)>,
    },
    Chronology { name: Ident, stmts: Vec<ChronoStmt> },
    Choose { count: u64, events: Vec<Ident> },
    Constraint {
        name: Ident,
        lhs: Formula,
        kind: ConstraintKind,
        rhs: Formula,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decl {
    pub pos: Pos,
    pub item: Item,
}

/// The declarations of a `.tm` file in source order, with positions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SourceModel {
    pub decls: Vec<Decl>,
}

const ITEM_KEYWORDS: [&str; 9] = [
    "thimac",
    "flow",
    "trigger",
    "region",
    "atom",
    "event",
    "chronology",
    "choose",
    "constraint",
];

pub(crate) struct Parser {
    toks: Vec<Token>,
    i: usize,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    pub(crate) fn new(src: &str) -> (Self, Vec<Diagnostic>) {
        let (toks, diags) = lex(src);
        (Parser { toks, i: 0 }, diags)
    }

    fn peek(&self) -> &Token {
        &self.toks[self.i]
    }

    fn peek_tok(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn advance(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if t.tok != Tok::Eof {
            self.i += 1;
        }
        t
    }

    fn error_here(&self, what: &str) -> Diagnostic {
        let t = self.peek();
        Diagnostic::new(DiagCode::Syntax, format!("expected {what}, found {}", t.tok.describe())).at(t.pos)
    }

    fn expect(&mut self, tok: Tok) -> PResult<Pos> {
        if *self.peek_tok() == tok {
            Ok(self.advance().pos)
        } else {
            Err(self.error_here(&tok.describe()))
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek_tok() == tok {
            self.advance();
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> PResult<Ident> {
        match self.peek_tok() {
            Tok::Ident(s) => {
                let text = s.clone();
                let pos = self.advance().pos;
                Ok(Ident { text, pos })
            }
            _ => Err(self.error_here(what)),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<Pos> {
        match self.peek_tok() {
            Tok::Ident(s) if s == kw => Ok(self.advance().pos),
            _ => Err(self.error_here(&format!("`{kw}`"))),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek_tok(), Tok::Ident(s) if s == kw)
    }

    fn int(&mut self, what: &str) -> PResult<u64> {
        match *self.peek_tok() {
            Tok::Int(n) => {
                self.advance();
                Ok(n)
            }
            _ => Err(self.error_here(what)),
        }
    }

    pub(crate) fn at_eof(&self) -> bool {
        *self.peek_tok() == Tok::Eof
    }

    /// Parses a whole model, collecting a diagnostic per broken declaration.
    pub(crate) fn model(&mut self) -> (SourceModel, Vec<Diagnostic>) {
        let mut decls = Vec::new();
        let mut diags = Vec::new();
        while !self.at_eof() {
            let start = self.i;
            match self.item() {
                Ok(d) => decls.push(d),
                Err(e) => {
                    diags.push(e);
                    self.recover(start);
                }
            }
        }
        (SourceModel { decls }, diags)
    }

    /// Skips past the broken declaration: to the `;` or closing `}` that ends
    /// it at brace depth zero, at or after the failure point.
    fn recover(&mut self, start: usize) {
        let failed_at = self.i;
        let mut depth: i64 = 0;
        let mut j = start;
        while self.toks[j].tok != Tok::Eof {
            match self.toks[j].tok {
                Tok::LBrace => depth += 1,
                Tok::RBrace => {
                    depth -= 1;
                    if depth <= 0 && j >= failed_at {
                        j += 1;
                        break;
                    }
                }
                Tok::Semi if depth <= 0 && j >= failed_at => {
                    j += 1;
                    break;
                }
                Tok::Ident(ref s) if depth <= 0 && j > failed_at && ITEM_KEYWORDS.contains(&s.as_str()) => break,
                _ => {}
            }
            j += 1;
        }
        self.i = j.max(start + 1).min(self.toks.len() - 1);
    }

    fn item(&mut self) -> PResult<Decl> {
        let pos = self.peek().pos;
        let kw = match self.peek_tok() {
            Tok::Ident(s) if ITEM_KEYWORDS.contains(&s.as_str()) => s.clone(),
            _ => return Err(self.error_here("a declaration")),
        };
        let item = match kw.as_str() {
            "thimac" => Item::Thimac(self.thimac()?),
            "flow" | "trigger" => {
                self.advance();
                let from = self.path()?;
                let to = if kw == "flow" {
                    self.expect(Tok::Arrow)?;
                    self.path()?
                } else {
                    self.expect(Tok::Squiggle)?;
                    self.path()?
                };
                self.expect(Tok::Semi)?;
                if kw == "flow" {
                    Item::Flow { from, to }
                } else {
                    Item::Trigger { from, to }
                }
            }
            "region" => {
                self.advance();
                let name = self.ident("a region name")?;
                self.expect(Tok::Eq)?;
                self.expect(Tok::LBrace)?;
                let mut nodes = Vec::new();
                if *self.peek_tok() != Tok::RBrace {
                    nodes.push(self.path()?);
                    while self.eat(&Tok::Comma) {
                        nodes.push(self.path()?);
                    }
                }
                self.expect(Tok::RBrace)?;
                self.expect(Tok::Semi)?;
                Item::Region { name, nodes }
            }
            "atom" => {
                self.advance();
                let name = self.ident("an atom name")?;
                self.expect(Tok::Eq)?;
                let region = self.ident("a region name")?;
                self.expect(Tok::Semi)?;
                Item::Atom { name, region }
            }
            "event" => self.event()?,
            "chronology" => self.chronology()?,
            "choose" => {
                self.advance();
                let count = self.int("a count")?;
                self.keyword("of")?;
                self.expect(Tok::LParen)?;
                let mut events = vec![self.ident("an event name")?];
                while self.eat(&Tok::Bar) {
                    events.push(self.ident("an event name")?);
                }
                self.expect(Tok::RParen)?;
                self.expect(Tok::Semi)?;
                Item::Choose { count, events }
            }
            "constraint" => {
                self.advance();
                let name = self.ident("a constraint name")?;
                self.expect(Tok::Colon)?;
                let (lhs, kind, rhs) = self.constraint_body()?;
                self.expect(Tok::Semi)?;
                Item::Constraint { name, lhs, kind, rhs }
            }
            _ => unreachable!("keyword list is closed"),
        };
        Ok(Decl { pos, item })
    }

    fn thimac(&mut self) -> PResult<ThimacDecl> {
        self.keyword("thimac")?;
        let name = self.ident("a thimac name")?;
        if ActionKind::from_keyword(&name.text).is_some() {
            return Err(Diagnostic::new(
                DiagCode::Syntax,
                format!("`{}` is an action keyword and cannot name a thimac", name.text),
            )
            .at(name.pos));
        }
        self.expect(Tok::LBrace)?;
        let mut actions = Vec::new();
        let mut children = Vec::new();
        loop {
            match self.peek_tok() {
                Tok::RBrace => {
                    self.advance();
                    break;
                }
                Tok::Ident(s) if s == "thimac" => children.push(self.thimac()?),
                Tok::Ident(s) => match ActionKind::from_keyword(s) {
                    Some(kind) => {
                        let pos = self.advance().pos;
                        self.expect(Tok::Semi)?;
                        actions.push((kind, pos));
                    }
                    None => return Err(self.error_here("an action or a nested thimac")),
                },
                _ => return Err(self.error_here("an action or a nested thimac")),
            }
        }
        Ok(ThimacDecl {
            name,
            actions,
            children,
        })
    }

    fn path(&mut self) -> PResult<PathRef> {
        let first = self.ident("a thimac name")?;
        let pos = first.pos;
        let mut segs = vec![first.text];
        while self.eat(&Tok::Dot) {
            segs.push(self.ident("a path segment")?.text);
        }
        let last = segs.pop().expect("at least one segment");
        let Some(kind) = ActionKind::from_keyword(&last) else {
            return Err(Diagnostic::new(
                DiagCode::Syntax,
                format!("path must end in an action (create, process, release, transfer, receive), found `{last}`"),
            )
            .at(pos));
        };
        if segs.is_empty() {
            return Err(Diagnostic::new(DiagCode::Syntax, "an action path needs its thimac, e.g. `Waiter.create`").at(pos));
        }
        Ok(PathRef {
            thimacs: segs,
            kind,
            pos,
        })
    }

    fn event(&mut self) -> PResult<Item> {
        self.keyword("event")?;
        let name = self.ident("an event name")?;
        self.expect(Tok::At)?;
        let time = self.int("a time tick")?;
        let over = if self.at_keyword("over") {
            self.advance();
            Some(self.ident("a region name")?)
        } else {
            None
        };
        self.expect(Tok::LBrace)?;
        let mut constituents = Vec::new();
        while *self.peek_tok() != Tok::RBrace {
            let mode = match self.peek_tok() {
                Tok::Ident(s) if s == "actual" => EventMode::Actual,
                Tok::Ident(s) if s == "absent" => EventMode::Absent,
                _ => return Err(self.error_here("`actual` or `absent`")),
            };
            self.advance();
            let atom = self.ident("an atom name")?;
            self.expect(Tok::Semi)?;
            constituents.push((mode, atom));
        }
        if constituents.is_empty() {
            return Err(self.error_here("at least one `actual` or `absent` declaration"));
        }
        self.expect(Tok::RBrace)?;
        Ok(Item::Event {
            name,
            time,
            over,
            constituents,
        })
    }

    fn chronology(&mut self) -> PResult<Item> {
        self.keyword("chronology")?;
        let name = self.ident("a chronology name")?;
        self.expect(Tok::LBrace)?;
        let mut stmts = Vec::new();
        while !self.eat(&Tok::RBrace) {
            let source = self.ident("an event name")?;
            let triggered = match self.peek_tok() {
                Tok::Semi => {
                    self.advance();
                    stmts.push(ChronoStmt::Node(source));
                    continue;
                }
                Tok::Arrow => false,
                Tok::Squiggle => true,
                _ => return Err(self.error_here("`->`, `~>` or `;`")),
            };
            self.advance();
            if self.eat(&Tok::LParen) {
                let mut targets = vec![self.ident("an event name")?];
                while self.eat(&Tok::Bar) {
                    targets.push(self.ident("an event name")?);
                }
                self.expect(Tok::RParen)?;
                stmts.push(ChronoStmt::Alternative {
                    source,
                    targets,
                    triggered,
                });
            } else {
                let target = self.ident("an event name")?;
                stmts.push(if triggered {
                    ChronoStmt::Trigger(source, target)
                } else {
                    ChronoStmt::Sequence(source, target)
                });
            }
            self.expect(Tok::Semi)?;
        }
        Ok(Item::Chronology { name, stmts })
    }

    fn implication_kind(&self) -> Option<ConstraintKind> {
        match self.peek_tok() {
            Tok::Implies => Some(ConstraintKind::Simultaneous),
            Tok::Squiggle => Some(ConstraintKind::Triggering),
            _ => None,
        }
    }

    fn nested_implication(&self) -> Diagnostic {
        Diagnostic::new(
            DiagCode::NestedImplication,
            "nested implication: `=>` and `~>` may only appear once, at the top level of a constraint",
        )
        .at(self.peek().pos)
    }

    /// `formula ("=>" | "~>") formula`
    pub(crate) fn constraint_body(&mut self) -> PResult<(Formula, ConstraintKind, Formula)> {
        let lhs = self.disjunction()?;
        let Some(kind) = self.implication_kind() else {
            return Err(self.error_here("`=>` or `~>`"));
        };
        self.advance();
        let rhs = self.disjunction()?;
        if self.implication_kind().is_some() {
            return Err(self.nested_implication());
        }
        Ok((lhs, kind, rhs))
    }

    /// A formula with no implication. A top-level implication is parsed far
    /// enough to report nesting inside it before being rejected.
    pub(crate) fn formula(&mut self) -> PResult<Formula> {
        let f = self.disjunction()?;
        if self.implication_kind().is_some() {
            let pos = self.peek().pos;
            self.advance();
            self.disjunction()?;
            if self.implication_kind().is_some() {
                return Err(self.nested_implication());
            }
            return Err(Diagnostic::new(
                DiagCode::Syntax,
                "implication is only allowed at the top level of a constraint",
            )
            .at(pos));
        }
        Ok(f)
    }

    fn disjunction(&mut self) -> PResult<Formula> {
        let left = self.conjunction()?;
        if self.eat(&Tok::Bar) {
            Ok(Formula::or(left, self.disjunction()?))
        } else {
            Ok(left)
        }
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let left = self.unary()?;
        if self.eat(&Tok::Amp) {
            Ok(Formula::and(left, self.conjunction()?))
        } else {
            Ok(left)
        }
    }

    fn unary(&mut self) -> PResult<Formula> {
        if self.eat(&Tok::Bang) {
            return Ok(Formula::not(self.unary()?));
        }
        match self.peek_tok() {
            Tok::Ident(_) => Ok(Formula::Atom(self.ident("an atom")?.text)),
            Tok::LParen => {
                self.advance();
                let inner = self.disjunction()?;
                if self.implication_kind().is_some() {
                    return Err(self.nested_implication());
                }
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => Err(self.error_here("an atom, `!` or `(`")),
        }
    }

    /// `formula "@" mode`
    pub(crate) fn annotated(&mut self) -> PResult<AnnotatedFormula> {
        let formula = self.formula()?;
        self.expect(Tok::At)?;
        let word = self.ident("`actual`, `absent` or `potential`")?;
        let mode = match word.text.as_str() {
            "actual" => AnnotationMode::Actual,
            "absent" => AnnotationMode::Absent,
            "potential" => AnnotationMode::Potential,
            other => {
                return Err(Diagnostic::new(
                    DiagCode::Syntax,
                    format!("`{other}` is not an annotation mode (actual, absent, potential)"),
                )
                .at(word.pos))
            }
        };
        Ok(AnnotatedFormula::new(formula, mode))
    }

    pub(crate) fn annotated_list(&mut self) -> PResult<Vec<AnnotatedFormula>> {
        let mut out = Vec::new();
        if self.at_eof() {
            return Ok(out);
        }
        out.push(self.annotated()?);
        while self.eat(&Tok::Comma) {
            out.push(self.annotated()?);
        }
        Ok(out)
    }

    /// `atom=mode ("," atom=mode)*`, possibly empty.
    pub(crate) fn mode_assignment(&mut self) -> PResult<ModeAssignment> {
        let mut out = ModeAssignment::new();
        if self.at_eof() {
            return Ok(out);
        }
        loop {
            let atom = self.ident("an atom name")?;
            self.expect(Tok::Eq)?;
            let word = self.ident("a mode")?;
            let mode: Mode = word.text.parse().map_err(|_| {
                Diagnostic::new(
                    DiagCode::Syntax,
                    format!("`{}` is not a mode (actual, potential, absent, hole)", word.text),
                )
                .at(word.pos)
            })?;
            if out.get(&atom.text).is_some() {
                return Err(Diagnostic::new(
                    DiagCode::DuplicateId,
                    format!("atom `{}` is assigned twice", atom.text),
                )
                .at(atom.pos));
            }
            out.set(atom.text, mode);
            if !self.eat(&Tok::Comma) {
                return Ok(out);
            }
        }
    }

    pub(crate) fn finish(&mut self) -> PResult<()> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.error_here("end of input"))
        }
    }
}
