#include "sql_check.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace buml::testing {

namespace {

struct Tok {
    enum Kind { Word, Str, Punct, End } kind;
    std::string text;
};

std::vector<Tok> tokenize(std::string_view s, std::vector<std::string>& problems) {
    std::vector<Tok> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '-') {
            while (i < s.size() && s[i] != '\n') ++i;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Tok::Word, std::string(s.substr(i, j - i))});
            i = j;
        } else if (c == '\'') {
            std::string v;
            ++i;
            for (;;) {
                if (i >= s.size()) {
                    problems.push_back("unterminated string");
                    return out;
                }
                if (s[i] == '\'') {
                    if (i + 1 < s.size() && s[i + 1] == '\'') {
                        v += '\'';
                        i += 2;
                        continue;
                    }
                    ++i;
                    break;
                }
                v += s[i++];
            }
            out.push_back({Tok::Str, v});
        } else if (c == '(' || c == ')' || c == ',' || c == ';') {
            out.push_back({Tok::Punct, std::string(1, c)});
            ++i;
        } else {
            problems.push_back(std::string("stray character '") + c + "'");
            ++i;
        }
    }
    out.push_back({Tok::End, ""});
    return out;
}

bool keyword(const std::string& w) {
    static const std::set<std::string> k{"CREATE", "TABLE", "NOT", "NULL", "PRIMARY", "KEY", "FOREIGN",
                                         "REFERENCES", "CHECK", "IN", "INTEGER", "REAL", "TEXT", "BOOLEAN"};
    return k.count(w) > 0;
}

struct Bail {
    std::string why;
};

class Reader {
public:
    explicit Reader(std::vector<Tok> t) : t_(std::move(t)) {}

    bool at_end() const { return t_[i_].kind == Tok::End; }
    bool peek(std::string_view w) const { return t_[i_].kind != Tok::Str && t_[i_].text == w; }
    void expect(std::string_view w) {
        if (!peek(w)) throw Bail{"expected '" + std::string(w) + "' near '" + t_[i_].text + "'"};
        ++i_;
    }
    bool accept(std::string_view w) {
        if (!peek(w)) return false;
        ++i_;
        return true;
    }
    std::string ident() {
        const Tok& t = t_[i_];
        if (t.kind != Tok::Word || keyword(t.text)) throw Bail{"expected identifier near '" + t.text + "'"};
        ++i_;
        return t.text;
    }
    std::string str() {
        if (t_[i_].kind != Tok::Str) throw Bail{"expected string literal"};
        return t_[i_++].text;
    }
    std::vector<std::string> ident_list() {
        expect("(");
        std::vector<std::string> out{ident()};
        while (accept(",")) out.push_back(ident());
        expect(")");
        return out;
    }

private:
    std::vector<Tok> t_;
    std::size_t i_ = 0;
};

}  // namespace

SqlCheck check_sql(std::string_view script) {
    SqlCheck out;
    Reader r{tokenize(script, out.problems)};
    struct Fk {
        std::string table;
        std::vector<std::string> cols, ref_cols;
        std::string ref;
    };
    std::vector<Fk> fks;
    try {
        while (!r.at_end()) {
            r.expect("CREATE");
            r.expect("TABLE");
            const std::string name = r.ident();
            if (out.tables.count(name)) out.problems.push_back("table '" + name + "' defined twice");
            SqlTable t;
            int pk_clauses = 0;
            r.expect("(");
            do {
                if (r.accept("PRIMARY")) {
                    r.expect("KEY");
                    t.primary_key = r.ident_list();
                    ++pk_clauses;
                } else if (r.accept("FOREIGN")) {
                    r.expect("KEY");
                    Fk fk{name, r.ident_list(), {}, {}};
                    r.expect("REFERENCES");
                    fk.ref = r.ident();
                    fk.ref_cols = r.ident_list();
                    t.references.push_back(fk.ref);
                    fks.push_back(std::move(fk));
                } else {
                    const std::string col = r.ident();
                    if (!(r.accept("INTEGER") || r.accept("REAL") || r.accept("TEXT") || r.accept("BOOLEAN")))
                        throw Bail{"column '" + col + "' lacks a type"};
                    if (r.accept("NOT")) r.expect("NULL");
                    if (r.accept("PRIMARY")) {
                        r.expect("KEY");
                        t.primary_key = {col};
                        ++pk_clauses;
                    }
                    if (r.accept("CHECK")) {
                        r.expect("(");
                        if (r.ident() != col) out.problems.push_back("CHECK on '" + col + "' names another column");
                        r.expect("IN");
                        r.expect("(");
                        r.str();
                        while (r.accept(",")) r.str();
                        r.expect(")");
                        r.expect(")");
                    }
                    if (std::count(t.columns.begin(), t.columns.end(), col))
                        out.problems.push_back("column '" + name + "." + col + "' defined twice");
                    t.columns.push_back(col);
                }
            } while (r.accept(","));
            r.expect(")");
            r.expect(";");
            if (pk_clauses > 1) out.problems.push_back("table '" + name + "' has several primary keys");
            for (const auto& k : t.primary_key)
                if (!std::count(t.columns.begin(), t.columns.end(), k))
                    out.problems.push_back("primary key column '" + name + "." + k + "' does not exist");
            out.tables[name] = t;
            out.table_order.push_back(name);
        }
    } catch (const Bail& b) {
        out.problems.push_back(b.why);
        return out;
    }
    for (const auto& fk : fks) {
        const SqlTable& t = out.tables[fk.table];
        for (const auto& c : fk.cols)
            if (!std::count(t.columns.begin(), t.columns.end(), c))
                out.problems.push_back("foreign key column '" + fk.table + "." + c + "' does not exist");
        auto it = out.tables.find(fk.ref);
        if (it == out.tables.end()) {
            out.problems.push_back("'" + fk.table + "' references missing table '" + fk.ref + "'");
            continue;
        }
        if (it->second.primary_key != fk.ref_cols)
            out.problems.push_back("'" + fk.table + "' references a non-key of '" + fk.ref + "'");
        if (fk.cols.size() != fk.ref_cols.size())
            out.problems.push_back("'" + fk.table + "' foreign key arity mismatch");
    }
    return out;
}

}  // namespace buml::testing
