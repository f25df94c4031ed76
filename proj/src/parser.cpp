#include "contractcase/dsl.hpp"

#include <algorithm>
#include <set>

namespace contractcase {

std::string_view code_name(ParseCode code) noexcept {
    switch (code) {
    case ParseCode::UnexpectedToken: return "E001";
    case ParseCode::DuplicateId: return "E002";
    case ParseCode::UnresolvedDeferred: return "E003";
    case ParseCode::MalformedString: return "E004";
    }
    return "E001";
}

std::string format(const ParseError& error) {
    return error.span.file + ":" + std::to_string(error.span.line) + ":" +
           std::to_string(error.span.column) + ": " + std::string(code_name(error.code)) +
           ": " + error.message;
}

namespace {

enum class Tok { Ident, String, Semi, Colon, LBrace, RBrace, Comma, Arrow, End, Bad };

struct Token {
    Tok kind = Tok::End;
    std::string text; // identifier spelling or decoded string contents
    SourceSpan span;
};

std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::Ident: return "'" + t.text + "'";
    case Tok::String: return "string literal";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Arrow: return "'->'";
    case Tok::End: return "end of input";
    case Tok::Bad: return "'" + t.text + "'";
    }
    return "token";
}

std::string normalize_newlines(std::string_view in) {
    std::string out;
    out.reserve(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (in[i] == '\r') {
            out += '\n';
            if (i + 1 < in.size() && in[i + 1] == '\n') ++i;
        } else {
            out += in[i];
        }
    }
    return out;
}

class Lexer {
public:
    Lexer(const std::string& src, const std::string& file, std::vector<ParseError>& errors)
        : src_(src), file_(file), errors_(errors) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_blank();
            if (pos_ >= src_.size()) break;
            out.push_back(next());
        }
        Token end;
        end.kind = Tok::End;
        end.span = end_span();
        out.push_back(end);
        return out;
    }

private:
    SourceSpan span_here(int length) const { return {file_, line_, col_, length}; }

    // Points at the last character of the input so the span stays inside it.
    SourceSpan end_span() const { return {file_, last_line_, last_col_, 1}; }

    void advance() {
        const char c = src_[pos_++];
        last_line_ = line_;
        last_col_ = col_;
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            // Columns count code points, not bytes.
            ++col_;
        }
    }

    void skip_blank() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    static bool ident_head(char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
    }
    static bool ident_tail(char c) { return ident_head(c) || (c >= '0' && c <= '9'); }

    Token next() {
        Token t;
        const auto start = span_here(1);
        const std::size_t begin = pos_;
        const char c = src_[pos_];
        auto single = [&](Tok kind) {
            advance();
            t.kind = kind;
            t.text = std::string(1, c);
            t.span = start;
            return t;
        };
        switch (c) {
        case ';': return single(Tok::Semi);
        case ':': return single(Tok::Colon);
        case '{': return single(Tok::LBrace);
        case '}': return single(Tok::RBrace);
        case ',': return single(Tok::Comma);
        case '"': return string_literal();
        default: break;
        }
        if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            advance();
            advance();
            t.kind = Tok::Arrow;
            t.text = "->";
            t.span = start;
            t.span.length = 2;
            return t;
        }
        if (ident_head(c)) {
            while (pos_ < src_.size() && ident_tail(src_[pos_])) advance();
            t.kind = Tok::Ident;
            t.text = src_.substr(begin, pos_ - begin);
            t.span = start;
            t.span.length = static_cast<int>(pos_ - begin);
            return t;
        }
        // One whole code point as the offending token.
        advance();
        while (pos_ < src_.size() && (static_cast<unsigned char>(src_[pos_]) & 0xC0) == 0x80)
            advance();
        t.kind = Tok::Bad;
        t.text = src_.substr(begin, pos_ - begin);
        t.span = start;
        t.span.length = static_cast<int>(pos_ - begin);
        errors_.push_back({t.span, ParseCode::UnexpectedToken,
                           "unexpected character '" + t.text + "'"});
        return t;
    }

    Token string_literal() {
        Token t;
        t.span = span_here(1);
        const std::size_t begin = pos_;
        advance(); // opening quote
        bool malformed = false;
        for (;;) {
            if (pos_ >= src_.size()) {
                t.span.length = static_cast<int>(pos_ - begin);
                errors_.push_back({t.span, ParseCode::MalformedString,
                                   "unterminated string literal"});
                t.kind = Tok::Bad;
                return t;
            }
            const char c = src_[pos_];
            if (c == '"') {
                advance();
                break;
            }
            if (c == '\\') {
                const auto esc = span_here(2);
                advance();
                if (pos_ < src_.size() && (src_[pos_] == '"' || src_[pos_] == '\\')) {
                    t.text += src_[pos_];
                    advance();
                } else {
                    if (!malformed)
                        errors_.push_back({esc, ParseCode::MalformedString,
                                           "invalid escape sequence; only \\\" and \\\\ are allowed"});
                    malformed = true;
                }
                continue;
            }
            t.text += c;
            advance();
        }
        t.span.length = static_cast<int>(pos_ - begin);
        t.kind = malformed ? Tok::Bad : Tok::String;
        return t;
    }

    const std::string& src_;
    const std::string& file_;
    std::vector<ParseError>& errors_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    int last_line_ = 1;
    int last_col_ = 1;
};

struct SyntaxError {
    Token at;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, std::vector<ParseError>& errors)
        : toks_(std::move(tokens)), errors_(errors) {}

    SpecificationStructure run() {
        while (peek().kind != Tok::End) {
            try {
                item();
            } catch (const SyntaxError&) {
                recover();
            }
        }
        return std::move(out_);
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() {
        const Token& t = toks_[pos_];
        if (t.kind != Tok::End) ++pos_;
        return t;
    }

    [[noreturn]] void fail(const Token& t, const std::string& expected) {
        // Bad tokens already produced a lexical error.
        if (t.kind != Tok::Bad)
            errors_.push_back({t.span, ParseCode::UnexpectedToken,
                               "expected " + expected + ", found " + describe(t)});
        throw SyntaxError{t};
    }

    const Token& expect(Tok kind, const std::string& what) {
        if (peek().kind != kind) fail(peek(), what);
        return take();
    }

    bool accept_keyword(std::string_view kw) {
        if (peek().kind == Tok::Ident && peek().text == kw) {
            take();
            return true;
        }
        return false;
    }

    void expect_keyword(std::string_view kw) {
        if (!accept_keyword(kw)) fail(peek(), "'" + std::string(kw) + "'");
    }

    const Token& ident(const std::string& what) { return expect(Tok::Ident, what); }

    // Skip to just past the ';' ending the current item or the '}' closing its
    // block, or to an item keyword that starts a new statement.
    void recover() {
        int depth = depth_;
        depth_ = 0;
        bool consumed = false;
        Tok prev = Tok::Semi;
        while (peek().kind != Tok::End) {
            if (consumed && starts_item(peek()) &&
                (depth == 0 || prev == Tok::Semi || prev == Tok::RBrace))
                return;
            consumed = true;
            prev = take().kind;
            if (prev == Tok::LBrace) {
                ++depth;
            } else if (prev == Tok::RBrace) {
                if (--depth <= 0) return;
            } else if (prev == Tok::Semi && depth == 0) {
                return;
            }
        }
    }

    static bool starts_item(const Token& t) {
        return t.kind == Tok::Ident && (t.text == "component" || t.text == "contract" ||
                                        t.text == "refine" || t.text == "concern");
    }

    void declare(std::set<std::string>& seen, const Token& id, std::string_view kind) {
        if (!seen.insert(id.text).second)
            errors_.push_back({id.span, ParseCode::DuplicateId,
                               "duplicate " + std::string(kind) + " id '" + id.text + "'"});
    }

    std::string text(const Token& t) {
        if (t.text.empty())
            errors_.push_back({t.span, ParseCode::MalformedString,
                               "specification text must not be empty"});
        return t.text;
    }

    void item() {
        const Token& head = peek();
        if (head.kind != Tok::Ident) fail(head, "'component', 'contract', 'refine' or 'concern'");
        if (head.text == "component") return component();
        if (head.text == "contract") return contract();
        if (head.text == "refine") return refinement();
        if (head.text == "concern") return concern();
        fail(head, "'component', 'contract', 'refine' or 'concern'");
    }

    void component() {
        take();
        const Token id = ident("component identifier");
        Component c;
        c.id = id.text;
        c.name = id.text;
        if (accept_keyword("within")) c.parent = ident("parent component identifier").text;
        expect(Tok::Semi, "';'");
        declare(components_, id, "component");
        out_.components.push_back(std::move(c));
    }

    void contract() {
        take();
        const Token id = ident("contract identifier");
        expect_keyword("for");
        Contract k;
        k.id = id.text;
        k.component = ident("component identifier").text;
        expect(Tok::LBrace, "'{'");
        ++depth_;
        std::vector<Token> spec_ids;
        while (peek().kind == Tok::Ident && peek().text == "assume") {
            take();
            const Token sid = ident("assumption identifier");
            expect(Tok::Colon, "':'");
            const Token body = expect(Tok::String, "string literal");
            expect(Tok::Semi, "';'");
            k.assumptions.push_back({sid.text, SpecKind::Assumption, text(body)});
            spec_ids.push_back(sid);
        }
        expect_keyword("guarantee");
        const Token gid = ident("guarantee identifier");
        expect(Tok::Colon, "':'");
        const Token body = expect(Tok::String, "string literal");
        expect(Tok::Semi, "';'");
        expect(Tok::RBrace, "'}'");
        --depth_;
        k.guarantee = {gid.text, SpecKind::Guarantee, text(body)};
        spec_ids.push_back(gid);

        declare(contracts_, id, "contract");
        for (const auto& sid : spec_ids) declare(specs_, sid, "specification");
        out_.contracts.push_back(std::move(k));
    }

    void refinement() {
        take();
        const Token id = ident("refinement identifier");
        expect(Tok::Colon, "':'");
        Refinement r;
        r.id = id.text;
        r.source = ident("source specification identifier").text;
        expect(Tok::Arrow, "'->'");
        r.target = ident("target specification identifier").text;
        expect(Tok::Semi, "';'");
        declare(refinements_, id, "refinement");
        out_.refinements.push_back(std::move(r));
    }

    void concern() {
        take();
        const Token name = ident("concern name");
        expect_keyword("covers");
        std::set<Identifier> covers{ident("guarantee identifier").text};
        while (peek().kind == Tok::Comma) {
            take();
            covers.insert(ident("guarantee identifier").text);
        }
        expect(Tok::Semi, "';'");
        declare(concerns_, name, "concern");
        out_.concerns.emplace(name.text, std::move(covers));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int depth_ = 0; // open blocks of the item being parsed
    std::vector<ParseError>& errors_;
    SpecificationStructure out_;
    std::set<std::string> components_, contracts_, refinements_, concerns_, specs_;
};

} // namespace

ParseResult parse(std::string_view source, std::string file) {
    ParseResult result;
    const std::string text = normalize_newlines(source);
    Lexer lexer(text, file, result.errors);
    auto tokens = lexer.run();
    Parser parser(std::move(tokens), result.errors);
    auto structure = parser.run();
    std::stable_sort(result.errors.begin(), result.errors.end(),
                     [](const ParseError& a, const ParseError& b) {
                         return std::pair(a.span.line, a.span.column) <
                                std::pair(b.span.line, b.span.column);
                     });
    if (result.errors.empty()) result.structure = std::move(structure);
    return result;
}

} // namespace contractcase
