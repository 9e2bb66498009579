#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wspe/error.hpp"

namespace wspe {

/// Propositional formula over variables f_1..f_l, used for Boolean
/// combinations of Büchi conditions.  Assignments are bitmasks with f_i at
/// bit i-1.
class Formula {
public:
    enum class Op { True, False, Var, Not, And, Or };

    static Formula truth() { return Formula(Op::True); }
    static Formula falsity() { return Formula(Op::False); }
    static Formula var(int i) {
        if (i < 1 || i > 63) throw Error(ErrorKind::MalformedFormula, "variable index out of range");
        Formula f(Op::Var);
        f.var_ = i;
        return f;
    }
    static Formula negate(Formula a) {
        Formula f(Op::Not);
        f.args_.push_back(std::move(a));
        return f;
    }
    /// Empty conjunction is true.
    static Formula all_of(std::vector<Formula> args) {
        if (args.empty()) return truth();
        if (args.size() == 1) return std::move(args.front());
        Formula f(Op::And);
        f.args_ = std::move(args);
        return f;
    }
    /// Empty disjunction is false.
    static Formula any_of(std::vector<Formula> args) {
        if (args.empty()) return falsity();
        if (args.size() == 1) return std::move(args.front());
        Formula f(Op::Or);
        f.args_ = std::move(args);
        return f;
    }

    Op op() const { return op_; }

    bool evaluate(std::uint64_t assignment) const {
        switch (op_) {
        case Op::True: return true;
        case Op::False: return false;
        case Op::Var: return (assignment >> (var_ - 1)) & 1U;
        case Op::Not: return !args_.front().evaluate(assignment);
        case Op::And:
            for (auto& a : args_)
                if (!a.evaluate(assignment)) return false;
            return true;
        case Op::Or:
            for (auto& a : args_)
                if (a.evaluate(assignment)) return true;
            return false;
        }
        return false;
    }

    /// Largest variable index mentioned (0 if none).
    int max_var() const {
        int m = op_ == Op::Var ? var_ : 0;
        for (auto& a : args_) m = std::max(m, a.max_var());
        return m;
    }

    /// A conjunction of literals: variables in `pos` true, those in `neg` false.
    struct Term {
        std::uint64_t pos = 0;
        std::uint64_t neg = 0;
        bool operator==(const Term&) const = default;
    };

    /// Disjunctive normal form with contradictory terms dropped and exact
    /// duplicates merged.  Gives up (nullopt) once more than `limit` terms
    /// would be produced at any stage.
    std::optional<std::vector<Term>> to_dnf(std::size_t limit) const { return dnf(false, limit); }

    std::string to_string() const {
        switch (op_) {
        case Op::True: return "true";
        case Op::False: return "false";
        case Op::Var: return "f" + std::to_string(var_);
        case Op::Not: return "!" + args_.front().to_string();
        case Op::And:
        case Op::Or: {
            std::string s = "(";
            for (std::size_t i = 0; i < args_.size(); ++i) {
                if (i) s += op_ == Op::And ? " & " : " | ";
                s += args_[i].to_string();
            }
            return s + ")";
        }
        }
        return "?";
    }

private:
    explicit Formula(Op op) : op_(op) {}

    std::optional<std::vector<Term>> dnf(bool negated, std::size_t limit) const {
        using Terms = std::vector<Term>;
        switch (op_) {
        case Op::True: return negated ? Terms{} : Terms{Term{}};
        case Op::False: return negated ? Terms{Term{}} : Terms{};
        case Op::Var: {
            std::uint64_t bit = std::uint64_t{1} << (var_ - 1);
            return negated ? Terms{Term{0, bit}} : Terms{Term{bit, 0}};
        }
        case Op::Not: return args_.front().dnf(!negated, limit);
        case Op::And:
        case Op::Or: break;
        }
        const bool disjunction = (op_ == Op::Or) != negated;
        if (disjunction) {
            Terms out;
            for (auto& a : args_) {
                auto sub = a.dnf(negated, limit);
                if (!sub) return std::nullopt;
                for (auto& t : *sub)
                    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
                if (out.size() > limit) return std::nullopt;
            }
            return out;
        }
        Terms acc{Term{}};
        for (auto& a : args_) {
            auto sub = a.dnf(negated, limit);
            if (!sub) return std::nullopt;
            Terms next;
            for (auto& x : acc)
                for (auto& y : *sub) {
                    Term t{x.pos | y.pos, x.neg | y.neg};
                    if (t.pos & t.neg) continue;
                    if (std::find(next.begin(), next.end(), t) == next.end()) next.push_back(t);
                    if (next.size() > limit) return std::nullopt;
                }
            acc = std::move(next);
        }
        return acc;
    }

    Op op_;
    int var_ = 0;
    std::vector<Formula> args_;
};

} // namespace wspe
