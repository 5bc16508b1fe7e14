#include "cqfit/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include "cqfit/error.hpp"

namespace cqfit {
namespace {

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

std::vector<std::string_view> split_words(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) {
            ++j;
        }
        if (j > i) {
            out.push_back(s.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

// Cursor over a single logical line; whitespace is skipped between tokens.
class Scanner {
public:
    Scanner(std::string_view text, std::size_t line) : text_(text), line_(line) {}

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool at_end() {
        skip_space();
        return pos_ >= text_.size();
    }

    bool peek(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
        if (!peek(c)) {
            fail(std::string("expected '") + c + "'");
        }
        ++pos_;
    }

    bool accept(std::string_view token) {
        skip_space();
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    std::string name() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_name_char(text_[pos_])) {
            ++pos_;
        }
        if (pos_ == start) {
            fail("expected a relation name");
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    // A value: maximal run of value characters where commas only count inside <...>.
    Value value() {
        skip_space();
        std::size_t start = pos_;
        int depth = 0;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '<') {
                ++depth;
            } else if (c == '>') {
                if (depth == 0) {
                    break;
                }
                --depth;
            } else if (c == ',') {
                if (depth == 0) {
                    break;
                }
            } else if (!is_name_char(c)) {
                break;
            }
            ++pos_;
        }
        if (pos_ == start) {
            fail("expected a value");
        }
        if (depth != 0) {
            fail("unbalanced '<' in value");
        }
        std::string v(text_.substr(start, pos_ - start));
        if (!is_valid_value(v)) {
            fail("malformed value '" + v + "'");
        }
        return v;
    }

    // `(v1, ..., vk)` with k >= min_args.
    Tuple arguments(std::size_t min_args) {
        expect('(');
        Tuple args;
        if (peek(')')) {
            ++pos_;
        } else {
            while (true) {
                args.push_back(value());
                if (peek(',')) {
                    ++pos_;
                    continue;
                }
                expect(')');
                break;
            }
        }
        if (args.size() < min_args) {
            fail("expected at least " + std::to_string(min_args) + " argument(s)");
        }
        return args;
    }

    Fact fact() {
        Fact f;
        f.relation = name();
        f.args = arguments(1);
        return f;
    }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, pos_ + 1, message); }

private:
    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

void check_arity(Schema& schema, const Fact& f, std::size_t line) {
    try {
        schema.add(f.relation, f.arity());
    } catch (const SchemaError& e) {
        throw ParseError(line, 0, e.what());
    }
}

struct ExampleText {
    std::set<Fact> facts;
    std::set<Value> extra;
    Tuple answers;
    bool has_answer = false;
};

// Parses example lines [begin, end) of `lines`; line numbers are 1-based offsets.
ExampleText parse_example_lines(const std::vector<std::string_view>& lines, std::size_t begin, std::size_t end,
                                bool allow_answer) {
    ExampleText out;
    Schema schema;
    for (std::size_t i = begin; i < end; ++i) {
        std::size_t line_no = i + 1;
        std::string_view line = trim(lines[i]);
        if (line.empty() || line.front() == '%') {
            continue;
        }
        if (out.has_answer) {
            throw ParseError(line_no, 1, "content after the #answer line");
        }
        if (line.front() == '#') {
            auto words = split_words(line.substr(1));
            if (words.empty()) {
                throw ParseError(line_no, 1, "empty directive");
            }
            std::string_view directive = words.front();
            if (directive != "domain" && directive != "answer") {
                throw ParseError(line_no, 2, "unknown directive '#" + std::string(directive) + "'");
            }
            if (directive == "answer" && !allow_answer) {
                throw ParseError(line_no, 1, "#answer is not allowed in an instance");
            }
            Tuple values;
            for (std::size_t w = 1; w < words.size(); ++w) {
                std::string v(words[w]);
                if (!is_valid_value(v)) {
                    throw ParseError(line_no, 0, "malformed value '" + v + "'");
                }
                values.push_back(v);
            }
            if (directive == "domain") {
                out.extra.insert(values.begin(), values.end());
            } else {
                out.answers = std::move(values);
                out.has_answer = true;
            }
            continue;
        }
        Scanner scanner(line, line_no);
        Fact f = scanner.fact();
        if (!scanner.at_end()) {
            scanner.fail("trailing characters after fact");
        }
        check_arity(schema, f, line_no);
        out.facts.insert(std::move(f));
    }
    return out;
}

std::vector<std::string> sorted_fact_lines(const std::set<Fact>& facts) {
    std::vector<std::string> lines;
    lines.reserve(facts.size());
    for (const auto& f : facts) {
        lines.push_back(to_string(f));
    }
    std::sort(lines.begin(), lines.end());
    return lines;
}

void append_instance_body(std::string& out, const Instance& instance) {
    for (const auto& line : sorted_fact_lines(instance.facts())) {
        out += line;
        out += '\n';
    }
    auto isolated = instance.isolated_values();
    if (!isolated.empty()) {
        out += "#domain";
        for (const auto& v : isolated) {
            out += ' ';
            out += v;
        }
        out += '\n';
    }
}

}  // namespace

std::string to_string(const Fact& f) {
    std::string out = f.relation;
    out += '(';
    for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += f.args[i];
    }
    out += ')';
    return out;
}

Fact parse_fact(std::string_view text, std::size_t line) {
    Scanner scanner(text, line);
    Fact f = scanner.fact();
    if (!scanner.at_end()) {
        scanner.fail("trailing characters after fact");
    }
    return f;
}

Instance parse_instance(std::string_view text) {
    auto lines = split_lines(text);
    auto parsed = parse_example_lines(lines, 0, lines.size(), false);
    return Instance(std::move(parsed.facts), std::move(parsed.extra));
}

Example parse_example(std::string_view text) {
    auto lines = split_lines(text);
    auto parsed = parse_example_lines(lines, 0, lines.size(), true);
    return Example::from_facts(std::move(parsed.facts), std::move(parsed.answers), std::move(parsed.extra));
}

CQ parse_cq(std::string_view text) {
    // A CQ may span several lines; join them so that column numbers refer to the joined text.
    std::string joined;
    for (auto line : split_lines(text)) {
        std::string_view t = trim(line);
        if (t.empty() || t.front() == '%') {
            continue;
        }
        if (!joined.empty()) {
            joined += ' ';
        }
        joined += t;
    }
    Scanner scanner(joined, 1);
    CQ q;
    scanner.name();
    q.head = scanner.arguments(0);
    if (!scanner.accept(":-")) {
        scanner.fail("expected ':-'");
    }
    Schema schema;
    if (!scanner.at_end() && !scanner.peek('.')) {
        while (true) {
            Fact atom = scanner.fact();
            check_arity(schema, atom, 1);
            q.atoms.push_back(std::move(atom));
            if (scanner.peek(',')) {
                scanner.expect(',');
                continue;
            }
            break;
        }
    }
    if (scanner.peek('.')) {
        scanner.expect('.');
    }
    if (!scanner.at_end()) {
        scanner.fail("trailing characters after CQ body");
    }
    return q;
}

LabeledCollection parse_collection(std::string_view text) {
    auto lines = split_lines(text);
    LabeledCollection out;
    std::size_t start = lines.size();
    char label = 0;
    auto flush = [&](std::size_t end) {
        if (label == 0) {
            return;
        }
        auto parsed = parse_example_lines(lines, start, end, true);
        Example e = Example::from_facts(std::move(parsed.facts), std::move(parsed.answers), std::move(parsed.extra));
        (label == '+' ? out.positives : out.negatives).insert(std::move(e));
    };
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string_view line = trim(lines[i]);
        if (line == "+" || line == "-") {
            flush(i);
            label = line.front();
            start = i + 1;
        } else if (label == 0 && !line.empty() && line.front() != '%') {
            throw ParseError(i + 1, 1, "expected '+' or '-' before the first example");
        }
    }
    flush(lines.size());
    try {
        out.arity();
        out.schema();
    } catch (const SchemaError& e) {
        throw ParseError(0, 0, e.what());
    }
    return out;
}

std::string serialize(const Instance& instance) {
    std::string out;
    append_instance_body(out, instance);
    return out;
}

std::string serialize(const Example& example) {
    std::string out;
    append_instance_body(out, example.instance());
    if (example.arity() > 0) {
        out += "#answer";
        for (const auto& v : example.answers()) {
            out += ' ';
            out += v;
        }
        out += '\n';
    }
    return out;
}

std::string serialize(const CQ& q) {
    std::string out = "q(";
    for (std::size_t i = 0; i < q.head.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += q.head[i];
    }
    out += ") :-";
    for (std::size_t i = 0; i < q.atoms.size(); ++i) {
        out += i == 0 ? " " : ", ";
        out += to_string(q.atoms[i]);
    }
    return out;
}

std::string serialize(const LabeledCollection& collection) {
    std::vector<std::string> pos;
    std::vector<std::string> neg;
    for (const auto& e : collection.positives) {
        pos.push_back(serialize(e));
    }
    for (const auto& e : collection.negatives) {
        neg.push_back(serialize(e));
    }
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    std::string out;
    for (const auto& s : pos) {
        out += "+\n" + s;
    }
    for (const auto& s : neg) {
        out += "-\n" + s;
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
    out << contents;
}

}  // namespace cqfit
