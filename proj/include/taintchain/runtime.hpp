#pragma once

#include <string>
#include <variant>
#include <vector>

#include "taintchain/taint_state.hpp"
#include "taintchain/types.hpp"

namespace taintchain {

/// Per-account balance record stored by the balances module.
struct AccountBalance {
    /// The amount that is free and allowed to be transferred out.
    u128 free = 0;
    /// The amount that is reserved by other modules.
    u128 reserved = 0;

    bool operator==(const AccountBalance&) const = default;

    Bytes encode() const;
    static AccountBalance decode(const Bytes& data);
};

/// Call payloads. The registry of runtime modules is this variant; adding a
/// module means adding an alternative here plus its arms in the dispatchers
/// below. Only the balances transfer ships.
struct Transfer {
    AccountId dest{};
    u128 value = 0;

    bool operator==(const Transfer&) const = default;
};
using CallPayload = std::variant<Transfer>;

struct Transaction {
    uint64_t id = 0;
    AccountId origin{};
    CallPayload call = Transfer{};
    /// Runtime-only: set when the transaction is forwarded to a peer worker.
    /// Never encoded; a transaction is forwarded at most once.
    bool forwarded = false;

    Bytes encode() const;
    static Transaction decode(const Bytes& data);

    bool operator==(const Transaction& o) const {
        return id == o.id && origin == o.origin && call == o.call;
    }
};

/// Result of executing one transaction.
struct DispatchOk {};
struct LogicError {
    std::string message;
};
struct TaintConflict {
    ThreadId owner;
    /// True iff the failing state access was this attempt's first access.
    bool first_access;
};
using DispatchOutcome = std::variant<DispatchOk, LogicError, TaintConflict>;

inline bool is_ok(const DispatchOutcome& o) { return std::holds_alternative<DispatchOk>(o); }
inline bool is_logic_error(const DispatchOutcome& o) { return std::holds_alternative<LogicError>(o); }
inline const TaintConflict* as_conflict(const DispatchOutcome& o) {
    return std::get_if<TaintConflict>(&o);
}

/// State key of an account's balance record:
/// hash("balances:balance_of") ++ hash(encode(account)).
StateKey balance_key(const AccountId& account);

/// Pseudo-static access hints: the state keys the transaction is expected to
/// touch, computed by inspecting the payload without executing it. For a
/// transfer these are the balance keys of origin and destination, in order.
std::vector<StateKey> access_hints(const Transaction& tx);

/// Execute `tx` against the taintable state as thread `current`. All state
/// effects are withheld until every required key has been acquired, so a
/// TaintConflict (and a LogicError) leaves the state values unchanged.
DispatchOutcome dispatch(const Transaction& tx, TaintableState& state, ThreadId current);

/// Execute `tx` bypassing taints. Single-threaded phases only (orphan phase,
/// sequential baselines). Cannot produce a TaintConflict.
DispatchOutcome apply_unchecked(const Transaction& tx, TaintableState& state);

}  // namespace taintchain
