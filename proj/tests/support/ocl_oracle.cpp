#include "ocl_oracle.hpp"

#include <cmath>
#include <set>

namespace buml::testing {

namespace {

using namespace ocl;

struct Bad {};

// Wide enough that int64 arithmetic never wraps before the range check.
__extension__ typedef __int128 Wide;

// Tagged value; `items` for sequences, `text` for strings and object ids.
struct OV {
    enum Tag { Nul, I, R, S, B, E, Obj, Seq } tag = Nul;
    Wide i = 0;
    double r = 0;
    bool b = false;
    std::string text;
    std::string lit;  // enum literal; text holds the enumeration
    std::vector<OV> items;
};

OV make_bool(bool v) {
    OV o;
    o.tag = OV::B;
    o.b = v;
    return o;
}

OV from_value(const Value& v) {
    OV o;
    switch (v.kind()) {
        case ValueKind::Null: break;
        case ValueKind::Int: o.tag = OV::I; o.i = v.as_int(); break;
        case ValueKind::Float: o.tag = OV::R; o.r = v.as_float(); break;
        case ValueKind::Str: o.tag = OV::S; o.text = v.as_string(); break;
        case ValueKind::Bool: o.tag = OV::B; o.b = v.as_bool(); break;
        case ValueKind::Enum:
            o.tag = OV::E;
            o.text = v.as_enum().enumeration;
            o.lit = v.as_enum().literal;
            break;
    }
    return o;
}

bool numeric(const OV& v) { return v.tag == OV::I || v.tag == OV::R; }
double real_of(const OV& v) { return v.tag == OV::I ? static_cast<double>(static_cast<long long>(v.i)) : v.r; }

bool same(const OV& a, const OV& b) {
    if (numeric(a) && numeric(b)) {
        if (a.tag == OV::I && b.tag == OV::I) return a.i == b.i;
        return real_of(a) == real_of(b);
    }
    if (a.tag != b.tag) return false;
    switch (a.tag) {
        case OV::Nul: return true;
        case OV::S: return a.text == b.text;
        case OV::B: return a.b == b.b;
        case OV::E: return a.text == b.text && a.lit == b.lit;
        case OV::Obj: return a.text == b.text;
        case OV::Seq:
            if (a.items.size() != b.items.size()) return false;
            for (std::size_t k = 0; k < a.items.size(); ++k)
                if (!same(a.items[k], b.items[k])) return false;
            return true;
        default: return false;
    }
}

constexpr Wide kMax = static_cast<Wide>(INT64_MAX);
constexpr Wide kMin = static_cast<Wide>(INT64_MIN);

OV int_result(Wide x) {
    if (x > kMax || x < kMin) throw Bad{};
    OV o;
    o.tag = OV::I;
    o.i = x;
    return o;
}

OV real_result(double x) {
    if (!std::isfinite(x)) throw Bad{};
    OV o;
    o.tag = OV::R;
    o.r = x;
    return o;
}

class Oracle {
public:
    Oracle(const ObjectModel& om, const ClassModel& cm) : om_(om), cm_(cm) {}

    // Every class reachable upward from `cls`, itself included.
    std::set<std::string> ancestors(const std::string& cls) const {
        std::set<std::string> seen{cls};
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& g : cm_.generalizations)
                if (seen.count(g.specific) && !seen.count(g.general)) {
                    seen.insert(g.general);
                    grew = true;
                }
        }
        return seen;
    }

    bool known_class(const std::string& n) const {
        for (const auto& c : cm_.classes)
            if (c.name == n) return true;
        return false;
    }

    OV eval(const Expr& e, std::vector<std::pair<std::string, OV>>& env) {
        if (auto* n = std::get_if<Literal>(&e.node)) return from_value(n->value);
        if (std::holds_alternative<SelfRef>(e.node)) return lookup(env, "self");
        if (auto* n = std::get_if<VarRef>(&e.node)) {
            for (auto it = env.rbegin(); it != env.rend(); ++it)
                if (it->first == n->name) return it->second;
            for (auto it = env.rbegin(); it != env.rend(); ++it)
                if (it->first.empty()) return dot(it->second, n->name, true);
            return dot(lookup(env, "self"), n->name, true);
        }
        if (auto* n = std::get_if<AttrNav>(&e.node)) return dot(eval(*n->source, env), n->property, true);
        if (auto* n = std::get_if<AssocNav>(&e.node)) return dot(eval(*n->source, env), n->end, false);
        if (auto* n = std::get_if<Unary>(&e.node)) {
            OV v = eval(*n->operand, env);
            if (n->op == UnaryOp::Not) {
                if (v.tag != OV::B) throw Bad{};
                return make_bool(!v.b);
            }
            if (v.tag == OV::I) return int_result(-v.i);
            if (v.tag == OV::R) return real_result(-v.r);
            throw Bad{};
        }
        if (auto* n = std::get_if<Binary>(&e.node)) return binary(*n, env);
        if (auto* n = std::get_if<If>(&e.node)) {
            OV c = eval(*n->condition, env);
            if (c.tag != OV::B) throw Bad{};
            return eval(c.b ? *n->then_branch : *n->else_branch, env);
        }
        return collection(std::get<CollectionOp>(e.node), env);
    }

private:
    static OV lookup(const std::vector<std::pair<std::string, OV>>& env, const std::string& name) {
        for (auto it = env.rbegin(); it != env.rend(); ++it)
            if (it->first == name) return it->second;
        throw Bad{};
    }

    OV dot(const OV& src, const std::string& name, bool allow_attribute) {
        if (src.tag != OV::Obj) throw Bad{};
        const ObjectDef* obj = nullptr;
        for (const auto& o : om_.objects)
            if (o.id == src.text) {
                obj = &o;
                break;
            }
        if (!obj || !known_class(obj->classifier)) throw Bad{};
        const std::set<std::string> up = ancestors(obj->classifier);

        if (allow_attribute) {
            for (const auto& c : cm_.classes) {
                if (!up.count(c.name)) continue;
                for (const auto& p : c.properties) {
                    if (p.name != name) continue;
                    for (const auto& s : obj->slots)
                        if (s.property == name) return from_value(s.value);
                    return OV{};
                }
            }
        }

        const Association* hit = nullptr;
        int far = -1, hits = 0;
        for (const auto& a : cm_.associations)
            for (int k = 0; k < 2; ++k) {
                const std::string nav = a.ends[k].role ? *a.ends[k].role : a.ends[k].target;
                if (nav == name && up.count(a.ends[1 - k].target)) {
                    hit = &a;
                    far = k;
                    ++hits;
                }
            }
        if (hits != 1) throw Bad{};

        OV seq;
        seq.tag = OV::Seq;
        for (const auto& l : om_.links) {
            if (l.association != hit->name || l.ends[1 - far] != obj->id) continue;
            OV o;
            o.tag = OV::Obj;
            o.text = l.ends[far];
            seq.items.push_back(o);
        }
        const auto& upper = hit->ends[far].multiplicity.upper;
        if (upper && *upper == 1) {
            if (seq.items.size() > 1) throw Bad{};
            return seq.items.empty() ? OV{} : seq.items[0];
        }
        return seq;
    }

    OV binary(const Binary& n, std::vector<std::pair<std::string, OV>>& env) {
        auto truth = [&](const ExprPtr& x) {
            OV v = eval(*x, env);
            if (v.tag != OV::B) throw Bad{};
            return v.b;
        };
        switch (n.op) {
            case BinaryOp::And: return make_bool(truth(n.lhs) ? truth(n.rhs) : false);
            case BinaryOp::Or: return make_bool(truth(n.lhs) ? true : truth(n.rhs));
            case BinaryOp::Implies: return make_bool(truth(n.lhs) ? truth(n.rhs) : true);
            default: break;
        }
        OV a = eval(*n.lhs, env);
        OV b = eval(*n.rhs, env);
        if (n.op == BinaryOp::Eq) return make_bool(same(a, b));
        if (n.op == BinaryOp::Ne) return make_bool(!same(a, b));
        if (n.op == BinaryOp::Lt || n.op == BinaryOp::Le || n.op == BinaryOp::Gt || n.op == BinaryOp::Ge) {
            int sign;
            if (a.tag == OV::I && b.tag == OV::I) sign = (a.i > b.i) - (a.i < b.i);
            else if (numeric(a) && numeric(b)) sign = (real_of(a) > real_of(b)) - (real_of(a) < real_of(b));
            else if (a.tag == OV::S && b.tag == OV::S) sign = (a.text > b.text) - (a.text < b.text);
            else throw Bad{};
            if (n.op == BinaryOp::Lt) return make_bool(sign < 0);
            if (n.op == BinaryOp::Le) return make_bool(sign <= 0);
            if (n.op == BinaryOp::Gt) return make_bool(sign > 0);
            return make_bool(sign >= 0);
        }
        if (!numeric(a) || !numeric(b)) throw Bad{};
        if (a.tag == OV::I && b.tag == OV::I) {
            switch (n.op) {
                case BinaryOp::Add: return int_result(a.i + b.i);
                case BinaryOp::Sub: return int_result(a.i - b.i);
                case BinaryOp::Mul: return int_result(a.i * b.i);
                default:
                    if (b.i == 0) throw Bad{};
                    return int_result(a.i / b.i);
            }
        }
        const double x = real_of(a), y = real_of(b);
        switch (n.op) {
            case BinaryOp::Add: return real_result(x + y);
            case BinaryOp::Sub: return real_result(x - y);
            case BinaryOp::Mul: return real_result(x * y);
            default:
                if (y == 0.0) throw Bad{};
                return real_result(x / y);
        }
    }

    OV collection(const CollectionOp& n, std::vector<std::pair<std::string, OV>>& env) {
        OV src = eval(*n.source, env);
        std::vector<OV> items;
        if (src.tag == OV::Seq) items = src.items;
        else if (src.tag != OV::Nul) items.push_back(src);

        if (n.op == CollectionOpKind::Size) return int_result(static_cast<Wide>(items.size()));
        if (n.op == CollectionOpKind::IsEmpty) return make_bool(items.empty());
        if (n.op == CollectionOpKind::NotEmpty) return make_bool(!items.empty());
        if (n.op == CollectionOpKind::Includes) {
            OV needle = eval(*n.body, env);
            for (const auto& x : items)
                if (same(x, needle)) return make_bool(true);
            return make_bool(false);
        }
        OV out;
        out.tag = OV::Seq;
        for (const auto& x : items) {
            env.emplace_back(n.iterator ? *n.iterator : std::string{}, x);
            OV r;
            try {
                r = eval(*n.body, env);
            } catch (const Bad&) {
                env.pop_back();
                throw;
            }
            env.pop_back();
            if (n.op == CollectionOpKind::Collect) {
                if (r.tag == OV::Seq) throw Bad{};
                out.items.push_back(r);
                continue;
            }
            if (r.tag != OV::B) throw Bad{};
            if (n.op == CollectionOpKind::ForAll && !r.b) return make_bool(false);
            if (n.op == CollectionOpKind::Exists && r.b) return make_bool(true);
            if (n.op == CollectionOpKind::Select && r.b) out.items.push_back(x);
        }
        if (n.op == CollectionOpKind::ForAll) return make_bool(true);
        if (n.op == CollectionOpKind::Exists) return make_bool(false);
        return out;
    }

    const ObjectModel& om_;
    const ClassModel& cm_;
};

}  // namespace

std::vector<OracleEntry> oracle_verdicts(const Expr& body, const std::string& context, const ObjectModel& objects,
                                         const ClassModel& model) {
    Oracle oracle{objects, model};
    std::vector<OracleEntry> out;
    if (!oracle.known_class(context)) return out;
    for (const auto& o : objects.objects) {
        if (!oracle.known_class(o.classifier) || !oracle.ancestors(o.classifier).count(context)) continue;
        std::vector<std::pair<std::string, OV>> env;
        OV self;
        self.tag = OV::Obj;
        self.text = o.id;
        env.emplace_back("self", self);
        OracleVerdict v = OracleVerdict::Error;
        try {
            OV r = oracle.eval(body, env);
            if (r.tag == OV::B) v = r.b ? OracleVerdict::True : OracleVerdict::False;
        } catch (const Bad&) {
        }
        out.push_back({o.id, v});
    }
    return out;
}

}  // namespace buml::testing
