#include <map>
#include <set>

#include "buml/codegen/generator.hpp"
#include "buml/names.hpp"
#include "text_builder.hpp"

namespace buml::codegen {

namespace {

struct Column {
    std::string name;
    std::string type;
    bool not_null = true;
    bool inline_primary_key = false;
    std::string check;
};

struct ForeignKey {
    std::vector<std::string> columns;
    std::string table;
    std::vector<std::string> referenced;
};

struct Table {
    std::string name;
    std::string element;  // class or association it came from
    std::vector<Column> columns;
    std::vector<std::string> primary_key;
    std::vector<ForeignKey> foreign_keys;
};

struct KeyColumn {
    std::string name;
    std::string type;
};

// An association realized as foreign-key columns on `holder` (and its
// concrete subclasses) pointing at `referenced`.
struct PendingFk {
    std::string holder;
    std::string referenced;
    std::string prefix;
    bool not_null;
};

std::string end_prefix(const AssociationEnd& e) { return e.role ? *e.role : snake_case(e.target); }

std::string join(const std::vector<std::string>& parts) {
    std::string s;
    for (const auto& p : parts) s += (s.empty() ? "" : ", ") + p;
    return s;
}

class SqlGenerator {
public:
    explicit SqlGenerator(const ClassModel& model) : model_(model) {}

    GenerationResult run() {
        for (const auto& c : model_.classes)
            if (!c.is_abstract) concrete_.push_back(&c);
        plan_associations();
        assign_keys();
        for (const ClassDef* c : concrete_) tables_.push_back(class_table(*c));
        for (const auto& [assoc, ends] : joins_) tables_.push_back(join_table(*assoc));
        check_names();

        GenerationResult result;
        if (!has_errors(diags_)) result.artifacts.push_back({"schema.sql", render()});
        result.diagnostics = std::move(diags_);
        return result;
    }

private:
    bool concrete(const std::string& cls) const {
        const ClassDef* c = model_.find_class(cls);
        return c && !c->is_abstract;
    }

    void plan_associations() {
        for (const auto& a : model_.associations) {
            const AssociationEnd& e0 = a.ends[0];
            const AssociationEnd& e1 = a.ends[1];
            if (e0.multiplicity.at_most_one() || e1.multiplicity.at_most_one()) {
                // One-to-one keeps the column on the ends[1] side.
                const bool ref_first = e0.multiplicity.at_most_one();
                const AssociationEnd& ref = ref_first ? e0 : e1;
                const AssociationEnd& holder = ref_first ? e1 : e0;
                if (!concrete(ref.target)) {
                    unsupported(a, "references abstract class '" + ref.target + "', which has no table");
                    continue;
                }
                referenced_.insert(ref.target);
                fks_.push_back({holder.target, ref.target, end_prefix(ref), ref.multiplicity.lower >= 1});
                continue;
            }
            if (!concrete(e0.target) || !concrete(e1.target)) {
                unsupported(a, "connects an abstract class; many-to-many join tables need concrete ends");
                continue;
            }
            if (end_prefix(e0) == end_prefix(e1)) {
                diags_.push_back(make_error(codes::GenUnsupported,
                                            "self-referential many-to-many association '" + a.name +
                                                "' needs distinct role names for its join table",
                                            a.origin.span, a.name));
                continue;
            }
            referenced_.insert(e0.target);
            referenced_.insert(e1.target);
            joins_.emplace_back(&a, 0);
        }
    }

    void unsupported(const Association& a, const std::string& why) {
        diags_.push_back(make_warning(codes::GenUnsupported,
                                      "association '" + a.name + "' " + why + "; it is not mapped", a.origin.span,
                                      a.name));
    }

    static std::string sql_type(const ClassModel& model, const Property& p) {
        if (auto prim = primitive_from_name(p.type)) {
            switch (*prim) {
                case PrimitiveKind::Int: return "INTEGER";
                case PrimitiveKind::Float: return "REAL";
                case PrimitiveKind::Str: return "TEXT";
                case PrimitiveKind::Bool: return "BOOLEAN";
            }
        }
        if (model.find_enum(p.type)) return "TEXT";
        return {};
    }

    void assign_keys() {
        for (const ClassDef* c : concrete_) {
            std::vector<KeyColumn> key;
            for (const auto& p : all_properties(model_, c->name))
                if (p.is_id) key.push_back({p.name, sql_type(model_, p)});
            const bool has_fk = std::any_of(fks_.begin(), fks_.end(),
                                            [&](const PendingFk& f) { return is_subclass_of(model_, c->name, f.holder); });
            const bool has_columns = !all_properties(model_, c->name).empty() || has_fk;
            if (key.empty() && (referenced_.count(c->name) || !has_columns)) {
                key.push_back({"id", "INTEGER"});
                synthetic_.insert(c->name);
                diags_.push_back(make_warning(codes::SyntheticKey,
                                              "class '" + c->name + "' has no {id} property; using a synthetic 'id' key",
                                              c->origin.span, c->name));
            }
            keys_[c->name] = std::move(key);
        }
    }

    Table class_table(const ClassDef& c) {
        Table t;
        t.name = snake_case(c.name);
        t.element = c.name;
        if (synthetic_.count(c.name)) t.columns.push_back({"id", "INTEGER", false, true, {}});
        for (const auto& p : all_properties(model_, c.name)) {
            const std::string type = sql_type(model_, p);
            if (type.empty()) {
                diags_.push_back(make_warning(codes::GenUnsupported,
                                              "attribute '" + c.name + "." + p.name + "' has class type '" + p.type +
                                                  "'; no column is generated",
                                              p.origin.span, c.name + "." + p.name));
                continue;
            }
            Column col{p.name, type, !p.is_optional, false, {}};
            if (const EnumDef* e = model_.find_enum(p.type)) {
                std::vector<std::string> quoted;
                for (const auto& lit : e->literals) quoted.push_back("'" + lit + "'");
                col.check = p.name + " IN (" + join(quoted) + ")";
            }
            t.columns.push_back(std::move(col));
            if (p.is_id) t.primary_key.push_back(p.name);
        }
        for (const auto& f : fks_) {
            if (!is_subclass_of(model_, c.name, f.holder)) continue;
            ForeignKey fk{{}, snake_case(f.referenced), {}};
            for (const auto& k : keys_.at(f.referenced)) {
                const std::string name = f.prefix + "_" + k.name;
                t.columns.push_back({name, k.type, f.not_null, false, {}});
                fk.columns.push_back(name);
                fk.referenced.push_back(k.name);
            }
            t.foreign_keys.push_back(std::move(fk));
        }
        return t;
    }

    Table join_table(const Association& a) {
        Table t;
        t.name = snake_case(a.name);
        t.element = a.name;
        for (const auto& e : a.ends) {
            ForeignKey fk{{}, snake_case(e.target), {}};
            for (const auto& k : keys_.at(e.target)) {
                const std::string name = end_prefix(e) + "_" + k.name;
                t.columns.push_back({name, k.type, true, false, {}});
                t.primary_key.push_back(name);
                fk.columns.push_back(name);
                fk.referenced.push_back(k.name);
            }
            t.foreign_keys.push_back(std::move(fk));
        }
        return t;
    }

    void check_names() {
        std::map<std::string, std::string> owners;
        for (const auto& t : tables_) {
            auto [it, fresh] = owners.emplace(t.name, t.element);
            if (!fresh)
                diags_.push_back(make_error(codes::NameCollision,
                                            "'" + t.element + "' and '" + it->second + "' both map to table '" +
                                                t.name + "'",
                                            std::nullopt, t.element));
            std::set<std::string> cols;
            for (const auto& c : t.columns)
                if (!cols.insert(c.name).second)
                    diags_.push_back(make_error(codes::NameCollision,
                                                "table '" + t.name + "' would have two columns named '" + c.name + "'",
                                                std::nullopt, t.element));
        }
    }

    // Referenced tables first; among ready tables the earliest declared wins.
    std::vector<std::size_t> class_table_order() {
        const std::size_t n = concrete_.size();
        std::map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < n; ++i) index[tables_[i].name] = i;
        std::vector<std::set<std::size_t>> deps(n);
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& fk : tables_[i].foreign_keys) {
                const std::size_t j = index.at(fk.table);
                if (j != i) deps[i].insert(j);
            }
        std::vector<bool> done(n, false);
        std::vector<std::size_t> order;
        while (order.size() < n) {
            std::optional<std::size_t> next;
            for (std::size_t i = 0; i < n && !next; ++i) {
                if (done[i]) continue;
                bool ready = true;
                for (std::size_t d : deps[i]) ready &= done[d];
                if (ready) next = i;
            }
            if (!next) {
                std::vector<std::string> stuck;
                for (std::size_t i = 0; i < n; ++i)
                    if (!done[i]) {
                        stuck.push_back(tables_[i].name);
                        order.push_back(i);
                    }
                diags_.push_back(make_warning(codes::GenUnsupported,
                                              "foreign keys form a cycle among " + join(stuck) +
                                                  "; those tables keep declaration order",
                                              std::nullopt, stuck.front()));
                break;
            }
            done[*next] = true;
            order.push_back(*next);
        }
        return order;
    }

    std::string render() {
        TextBuilder out(2);
        out.line("-- Generated by buml sql generator from model '" + model_.name + "'.");
        std::vector<std::size_t> order = class_table_order();
        for (std::size_t i = concrete_.size(); i < tables_.size(); ++i) order.push_back(i);
        for (std::size_t i : order) {
            const Table& t = tables_[i];
            std::vector<std::string> items;
            for (const auto& c : t.columns) {
                std::string s = c.name + " " + c.type;
                if (c.inline_primary_key) s += " PRIMARY KEY";
                else if (c.not_null) s += " NOT NULL";
                if (!c.check.empty()) s += " CHECK (" + c.check + ")";
                items.push_back(std::move(s));
            }
            if (!t.primary_key.empty()) items.push_back("PRIMARY KEY (" + join(t.primary_key) + ")");
            for (const auto& fk : t.foreign_keys)
                items.push_back("FOREIGN KEY (" + join(fk.columns) + ") REFERENCES " + fk.table + " (" +
                                join(fk.referenced) + ")");
            out.line();
            out.line("CREATE TABLE " + t.name + " (");
            out.indent();
            for (std::size_t k = 0; k < items.size(); ++k) out.line(items[k] + (k + 1 < items.size() ? "," : ""));
            out.dedent();
            out.line(");");
        }
        return out.str();
    }

    const ClassModel& model_;
    std::vector<const ClassDef*> concrete_;
    std::vector<PendingFk> fks_;
    std::vector<std::pair<const Association*, int>> joins_;
    std::set<std::string> referenced_;
    std::set<std::string> synthetic_;
    std::map<std::string, std::vector<KeyColumn>> keys_;
    std::vector<Table> tables_;
    Diagnostics diags_;
};

}  // namespace

GenerationResult generate_sql_ddl(const ClassModel& model) { return SqlGenerator{model}.run(); }

}  // namespace buml::codegen
