#include "taintchain/runtime.hpp"

#include <cassert>
#include <limits>

#include "taintchain/codec.hpp"
#include "taintchain/hash.hpp"

namespace taintchain {

namespace {

constexpr uint8_t kCallTransfer = 0;
constexpr u128 kU128Max = ~u128{0};

Bytes encode_account(const AccountId& id) { return Bytes(id.begin(), id.end()); }

}  // namespace

Bytes AccountBalance::encode() const {
    Writer w;
    w.put_u128(free);
    w.put_u128(reserved);
    return w.take();
}

AccountBalance AccountBalance::decode(const Bytes& data) {
    Reader r(data);
    AccountBalance b;
    b.free = r.get_u128();
    b.reserved = r.get_u128();
    r.finish();
    return b;
}

Bytes Transaction::encode() const {
    Writer w;
    w.put_u64(id);
    w.put_array(origin);
    std::visit(
        [&](const Transfer& t) {
            w.put_u8(kCallTransfer);
            w.put_array(t.dest);
            w.put_u128(t.value);
        },
        call);
    return w.take();
}

Transaction Transaction::decode(const Bytes& data) {
    Reader r(data);
    Transaction tx;
    tx.id = r.get_u64();
    tx.origin = r.get_array<32>();
    uint8_t kind = r.get_u8();
    if (kind != kCallTransfer) throw CodecError("unknown call payload");
    Transfer t;
    t.dest = r.get_array<32>();
    t.value = r.get_u128();
    tx.call = t;
    r.finish();
    return tx;
}

StateKey balance_key(const AccountId& account) {
    return derive_map_key("balances", "balance_of", encode_account(account));
}

std::vector<StateKey> access_hints(const Transaction& tx) {
    return std::visit(
        [&](const Transfer& t) {
            return std::vector<StateKey>{balance_key(tx.origin), balance_key(t.dest)};
        },
        tx.call);
}

namespace {

AccountBalance balance_or_default(const std::optional<Bytes>& raw) {
    if (!raw) return AccountBalance{};
    return AccountBalance::decode(*raw);
}

/// Transfer semantics, parameterized over the state accessors so that the
/// taint-checked and unchecked paths share one implementation. Reads happen
/// up front; writes are issued only once the transaction can no longer fail,
/// so conflicts and logic errors never leave partial effects behind.
template <typename ReadFn, typename WriteFn>
DispatchOutcome transfer(const AccountId& origin, const Transfer& t, ReadFn&& read_balance,
                         WriteFn&& write_balance) {
    StateKey origin_key = balance_key(origin);
    StateKey dest_key = balance_key(t.dest);

    // First state access: origin's balance.
    AccountBalance origin_bal;
    if (auto conflict = read_balance(origin_key, true, origin_bal)) return *conflict;

    if (origin_bal.free < t.value) {
        return LogicError{"Does not have enough funds."};
    }

    // Second state access: destination's balance.
    AccountBalance dest_bal;
    if (auto conflict = read_balance(dest_key, false, dest_bal)) return *conflict;

    AccountBalance origin_new = origin_bal;
    origin_new.free -= t.value;

    AccountBalance dest_new = (t.dest == origin) ? origin_new : dest_bal;
    if (dest_new.free > kU128Max - t.value) {
        return LogicError{"Balance overflow."};
    }
    dest_new.free += t.value;

    write_balance(origin_key, origin_new);
    write_balance(dest_key, dest_new);
    return DispatchOk{};
}

}  // namespace

DispatchOutcome dispatch(const Transaction& tx, TaintableState& state, ThreadId current) {
    return std::visit(
        [&](const Transfer& t) {
            auto read_balance = [&](const StateKey& key, bool first,
                                    AccountBalance& out) -> std::optional<DispatchOutcome> {
                ReadResult r = state.read(key, current);
                if (auto* err = std::get_if<TaintError>(&r)) {
                    return DispatchOutcome{TaintConflict{err->owner, first}};
                }
                out = balance_or_default(std::get<ReadOk>(r).value);
                return std::nullopt;
            };
            auto write_balance = [&](const StateKey& key, const AccountBalance& b) {
                // Both keys are tainted by `current` at this point, so the
                // write cannot fail.
                WriteResult w = state.write(key, b.encode(), current);
                assert(!std::holds_alternative<TaintError>(w));
                (void)w;
            };
            return transfer(tx.origin, t, read_balance, write_balance);
        },
        tx.call);
}

DispatchOutcome apply_unchecked(const Transaction& tx, TaintableState& state) {
    return std::visit(
        [&](const Transfer& t) {
            auto read_balance = [&](const StateKey& key, bool,
                                    AccountBalance& out) -> std::optional<DispatchOutcome> {
                out = balance_or_default(state.unchecked_read(key));
                return std::nullopt;
            };
            auto write_balance = [&](const StateKey& key, const AccountBalance& b) {
                state.unchecked_write(key, b.encode());
            };
            return transfer(tx.origin, t, read_balance, write_balance);
        },
        tx.call);
}

}  // namespace taintchain
