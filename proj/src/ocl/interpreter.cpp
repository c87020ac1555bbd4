#include "buml/ocl/interpreter.hpp"

#include <cmath>
#include <map>

namespace buml::ocl {

std::string describe(const EvalValue& v) {
    if (v.is_object()) return "object " + v.object().id;
    if (v.is_collection()) {
        std::string s = "Sequence{";
        for (std::size_t i = 0; i < v.collection().size(); ++i) s += (i ? ", " : "") + describe(v.collection()[i]);
        return s + "}";
    }
    return to_literal(v.scalar());
}

const EvalValue* Binding::lookup(std::string_view name) const {
    for (auto it = frames_.rbegin(); it != frames_.rend(); ++it)
        if (it->first == name) return &it->second;
    return nullptr;
}

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::True: return "true";
        case Verdict::False: return "false";
        case Verdict::Error: return "error";
    }
    return "?";
}

namespace {

struct RuntimeError {
    std::string message;
};

[[noreturn]] void fail(std::string message) { throw RuntimeError{std::move(message)}; }

bool is_numeric(const Value& v) { return v.kind() == ValueKind::Int || v.kind() == ValueKind::Float; }

double as_double(const Value& v) { return v.kind() == ValueKind::Int ? static_cast<double>(v.as_int()) : v.as_float(); }

bool equal(const EvalValue& a, const EvalValue& b) {
    if (a.is_scalar() && b.is_scalar()) {
        const Value& x = a.scalar();
        const Value& y = b.scalar();
        if (is_numeric(x) && is_numeric(y)) {
            if (x.kind() == ValueKind::Int && y.kind() == ValueKind::Int) return x.as_int() == y.as_int();
            return as_double(x) == as_double(y);
        }
        return x == y;
    }
    if (a.is_object() && b.is_object()) return a.object().id == b.object().id;
    if (a.is_collection() && b.is_collection()) {
        const auto& x = a.collection();
        const auto& y = b.collection();
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!equal(x[i], y[i])) return false;
        return true;
    }
    return false;
}

class Evaluator {
public:
    Evaluator(const ObjectModel& objects, const ClassModel& model) : objects_(objects), model_(model) {
        for (const auto& o : objects.objects) by_id_.emplace(o.id, &o);
    }

    EvalValue eval(const Expr& e, Binding& env) {
        return std::visit([&](const auto& n) { return eval_node(n, env); }, e.node);
    }

    const ObjectDef* object(const std::string& id) const {
        auto it = by_id_.find(id);
        return it == by_id_.end() ? nullptr : it->second;
    }

private:
    EvalValue eval_node(const Literal& n, Binding&) { return n.value; }

    EvalValue eval_node(const SelfRef&, Binding& env) {
        const EvalValue* v = env.lookup("self");
        if (!v) fail("'self' is not bound");
        return *v;
    }

    EvalValue eval_node(const VarRef& n, Binding& env) {
        if (const EvalValue* v = env.lookup(n.name)) return *v;
        if (const EvalValue* it = env.lookup("")) return navigate(*it, n.name, true);
        if (const EvalValue* s = env.lookup("self")) return navigate(*s, n.name, true);
        fail("unbound variable '" + n.name + "'");
    }

    EvalValue eval_node(const AttrNav& n, Binding& env) { return navigate(eval(*n.source, env), n.property, true); }

    EvalValue eval_node(const AssocNav& n, Binding& env) { return navigate(eval(*n.source, env), n.end, false); }

    EvalValue eval_node(const Unary& n, Binding& env) {
        const EvalValue v = eval(*n.operand, env);
        if (n.op == UnaryOp::Not) return Value::boolean(!boolean(v, "not"));
        const Value& x = scalar(v, "-");
        if (x.kind() == ValueKind::Int) {
            std::int64_t r = 0;
            if (__builtin_sub_overflow(std::int64_t{0}, x.as_int(), &r)) fail("integer overflow in negation");
            return Value::integer(r);
        }
        if (x.kind() == ValueKind::Float) return Value::real(-x.as_float());
        fail("cannot negate " + describe(v));
    }

    EvalValue eval_node(const Binary& n, Binding& env) {
        switch (n.op) {
            case BinaryOp::And:
                if (!boolean(eval(*n.lhs, env), "and")) return Value::boolean(false);
                return Value::boolean(boolean(eval(*n.rhs, env), "and"));
            case BinaryOp::Or:
                if (boolean(eval(*n.lhs, env), "or")) return Value::boolean(true);
                return Value::boolean(boolean(eval(*n.rhs, env), "or"));
            case BinaryOp::Implies:
                if (!boolean(eval(*n.lhs, env), "implies")) return Value::boolean(true);
                return Value::boolean(boolean(eval(*n.rhs, env), "implies"));
            default: break;
        }
        const EvalValue lhs = eval(*n.lhs, env);
        const EvalValue rhs = eval(*n.rhs, env);
        switch (n.op) {
            case BinaryOp::Eq: return Value::boolean(equal(lhs, rhs));
            case BinaryOp::Ne: return Value::boolean(!equal(lhs, rhs));
            case BinaryOp::Lt:
            case BinaryOp::Le:
            case BinaryOp::Gt:
            case BinaryOp::Ge: return compare(n.op, lhs, rhs);
            default: return arithmetic(n.op, lhs, rhs);
        }
    }

    EvalValue eval_node(const If& n, Binding& env) {
        return boolean(eval(*n.condition, env), "if") ? eval(*n.then_branch, env) : eval(*n.else_branch, env);
    }

    EvalValue eval_node(const CollectionOp& n, Binding& env) {
        const EvalValue src = eval(*n.source, env);
        Collection items;
        if (src.is_collection()) items = src.collection();
        else if (!(src.is_scalar() && src.scalar().is_null())) items.push_back(src);

        switch (n.op) {
            case CollectionOpKind::Size: return Value::integer(static_cast<std::int64_t>(items.size()));
            case CollectionOpKind::IsEmpty: return Value::boolean(items.empty());
            case CollectionOpKind::NotEmpty: return Value::boolean(!items.empty());
            case CollectionOpKind::Includes: {
                const EvalValue needle = eval(*n.body, env);
                for (const auto& item : items)
                    if (equal(item, needle)) return Value::boolean(true);
                return Value::boolean(false);
            }
            default: break;
        }

        const std::string var = n.iterator.value_or("");
        const std::string op{op_spelling(n.op)};
        Collection out;
        for (const auto& item : items) {
            env.push(var, item);
            EvalValue r;
            try {
                r = eval(*n.body, env);
            } catch (...) {
                env.pop();
                throw;
            }
            env.pop();
            switch (n.op) {
                case CollectionOpKind::ForAll:
                    if (!boolean(r, op)) return Value::boolean(false);
                    break;
                case CollectionOpKind::Exists:
                    if (boolean(r, op)) return Value::boolean(true);
                    break;
                case CollectionOpKind::Select:
                    if (boolean(r, op)) out.push_back(item);
                    break;
                default:
                    if (r.is_collection()) fail("collect body yields a collection; nested collections are not supported");
                    out.push_back(std::move(r));
            }
        }
        if (n.op == CollectionOpKind::ForAll) return Value::boolean(true);
        if (n.op == CollectionOpKind::Exists) return Value::boolean(false);
        return out;
    }

    bool boolean(const EvalValue& v, std::string_view op) {
        if (v.is_scalar() && v.scalar().kind() == ValueKind::Bool) return v.scalar().as_bool();
        fail("'" + std::string{op} + "' expects a boolean, got " + describe(v));
    }

    const Value& scalar(const EvalValue& v, std::string_view op) {
        if (!v.is_scalar()) fail("'" + std::string{op} + "' expects a primitive value, got " + describe(v));
        if (v.scalar().is_null()) fail("'" + std::string{op} + "' applied to null");
        return v.scalar();
    }

    EvalValue compare(BinaryOp op, const EvalValue& lhs, const EvalValue& rhs) {
        const std::string spelling{op_spelling(op)};
        const Value& a = scalar(lhs, spelling);
        const Value& b = scalar(rhs, spelling);
        int order = 0;
        if (is_numeric(a) && is_numeric(b)) {
            if (a.kind() == ValueKind::Int && b.kind() == ValueKind::Int)
                order = a.as_int() < b.as_int() ? -1 : (a.as_int() > b.as_int() ? 1 : 0);
            else
                order = as_double(a) < as_double(b) ? -1 : (as_double(a) > as_double(b) ? 1 : 0);
        } else if (a.kind() == ValueKind::Str && b.kind() == ValueKind::Str) {
            const int c = a.as_string().compare(b.as_string());
            order = c < 0 ? -1 : (c > 0 ? 1 : 0);
        } else {
            fail("cannot order " + describe(lhs) + " and " + describe(rhs));
        }
        switch (op) {
            case BinaryOp::Lt: return Value::boolean(order < 0);
            case BinaryOp::Le: return Value::boolean(order <= 0);
            case BinaryOp::Gt: return Value::boolean(order > 0);
            default: return Value::boolean(order >= 0);
        }
    }

    EvalValue arithmetic(BinaryOp op, const EvalValue& lhs, const EvalValue& rhs) {
        const std::string spelling{op_spelling(op)};
        const Value& a = scalar(lhs, spelling);
        const Value& b = scalar(rhs, spelling);
        if (!is_numeric(a) || !is_numeric(b))
            fail("'" + spelling + "' expects numbers, got " + describe(lhs) + " and " + describe(rhs));
        if (a.kind() == ValueKind::Int && b.kind() == ValueKind::Int) {
            const std::int64_t x = a.as_int(), y = b.as_int();
            std::int64_t r = 0;
            bool overflow = false;
            switch (op) {
                case BinaryOp::Add: overflow = __builtin_add_overflow(x, y, &r); break;
                case BinaryOp::Sub: overflow = __builtin_sub_overflow(x, y, &r); break;
                case BinaryOp::Mul: overflow = __builtin_mul_overflow(x, y, &r); break;
                default:
                    if (y == 0) fail("division by zero");
                    if (x == INT64_MIN && y == -1) overflow = true;
                    else r = x / y;
            }
            if (overflow) fail("integer overflow in '" + spelling + "'");
            return Value::integer(r);
        }
        const double x = as_double(a), y = as_double(b);
        double r = 0;
        switch (op) {
            case BinaryOp::Add: r = x + y; break;
            case BinaryOp::Sub: r = x - y; break;
            case BinaryOp::Mul: r = x * y; break;
            default:
                if (y == 0) fail("division by zero");
                r = x / y;
        }
        if (!std::isfinite(r)) fail("floating-point overflow in '" + spelling + "'");
        return Value::real(r);
    }

    EvalValue navigate(const EvalValue& source, const std::string& name, bool attributes) {
        if (source.is_collection())
            fail("cannot navigate '." + name + "' on a collection; use ->collect");
        if (source.is_scalar()) {
            if (source.scalar().is_null()) fail("navigation '." + name + "' on null");
            fail("cannot navigate '." + name + "' on " + describe(source));
        }
        const ObjectDef* obj = object(source.object().id);
        if (!obj) fail("unknown object '" + source.object().id + "'");
        if (!model_.find_class(obj->classifier)) fail("object '" + obj->id + "' has unknown class '" + obj->classifier + "'");

        if (attributes) {
            for (const auto& p : all_properties(model_, obj->classifier)) {
                if (p.name != name) continue;
                const AttributeLink* slot = obj->find_slot(name);
                return slot ? slot->value : Value::null();
            }
        }

        const Association* found = nullptr;
        int far = 0;
        int matches = 0;
        for (const auto& a : model_.associations) {
            for (int k = 0; k < 2; ++k) {
                const AssociationEnd& end = a.ends[k];
                const AssociationEnd& near = a.ends[1 - k];
                if (end.navigation_name() != name || !model_.find_class(near.target)) continue;
                if (!is_subclass_of(model_, obj->classifier, near.target)) continue;
                ++matches;
                found = &a;
                far = k;
            }
        }
        if (matches == 0) fail("class '" + obj->classifier + "' has no property or association end '" + name + "'");
        if (matches > 1) fail("navigation '." + name + "' from '" + obj->classifier + "' is ambiguous");

        Collection partners;
        for (const auto& l : objects_.links)
            if (l.association == found->name && l.ends[1 - far] == obj->id) partners.emplace_back(ObjectRef{l.ends[far]});
        if (found->ends[far].multiplicity.at_most_one()) {
            if (partners.empty()) return Value::null();
            if (partners.size() > 1)
                fail("'" + obj->id + "." + name + "' has " + std::to_string(partners.size()) +
                     " links but its multiplicity allows at most one");
            return partners.front();
        }
        return partners;
    }

    const ObjectModel& objects_;
    const ClassModel& model_;
    std::map<std::string, const ObjectDef*, std::less<>> by_id_;
};

InstanceVerdict judge(Evaluator& ev, const OclConstraint& c, const std::string& id) {
    Binding env;
    env.push("self", ObjectRef{id});
    try {
        const EvalValue r = ev.eval(*c.body, env);
        if (r.is_scalar() && r.scalar().kind() == ValueKind::Bool)
            return {id, r.scalar().as_bool() ? Verdict::True : Verdict::False, {}};
        return {id, Verdict::Error, "invariant evaluated to " + describe(r) + ", not a boolean"};
    } catch (const RuntimeError& e) {
        return {id, Verdict::Error, e.message};
    } catch (const Error& e) {
        return {id, Verdict::Error, e.what()};
    }
}

}  // namespace

EvalOutcome evaluate_expression(const Expr& e, const Binding& env, const ObjectModel& objects,
                                const ClassModel& model) {
    Evaluator ev{objects, model};
    Binding scope = env;
    try {
        return {ev.eval(e, scope), {}};
    } catch (const RuntimeError& err) {
        return {std::nullopt, err.message};
    } catch (const Error& err) {
        return {std::nullopt, err.what()};
    }
}

bool EvalResult::passed() const {
    if (error) return false;
    for (const auto& v : per_instance)
        if (v.verdict != Verdict::True) return false;
    return true;
}

EvalResult evaluate_constraint(const OclConstraint& c, const ObjectModel& objects, const ClassModel& model) {
    EvalResult result;
    result.constraint = c.name;
    if (!model.find_class(c.context_class)) {
        result.error = "unknown context class '" + c.context_class + "'";
        return result;
    }
    Evaluator ev{objects, model};
    for (const auto& o : objects.objects) {
        if (!model.find_class(o.classifier) || !is_subclass_of(model, o.classifier, c.context_class)) continue;
        result.per_instance.push_back(judge(ev, c, o.id));
    }
    return result;
}

bool CheckReport::passed() const {
    for (const auto& r : results)
        if (!r.passed()) return false;
    return true;
}

std::vector<std::pair<std::string, std::string>> CheckReport::failures() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& r : results) {
        if (r.error) out.emplace_back(r.constraint, "");
        for (const auto& v : r.per_instance)
            if (v.verdict != Verdict::True) out.emplace_back(r.constraint, v.object_id);
    }
    return out;
}

CheckReport check_all(const std::vector<OclConstraint>& constraints, const ObjectModel& objects,
                      const ClassModel& model) {
    CheckReport report;
    for (const auto& c : constraints) report.results.push_back(evaluate_constraint(c, objects, model));
    return report;
}

}  // namespace buml::ocl
