#include "washprob/ledger.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <istream>
#include <limits>
#include <map>
#include <utility>

#include <json.hpp>

namespace washprob::ledger {

using exactnum::rat_to_string;

bool Date::valid(int year, unsigned month, unsigned day) {
  if (month < 1 || month > 12 || day < 1) return false;
  static const unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  unsigned limit = kDays[month - 1];
  const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
  if (month == 2 && leap) limit = 29;
  return day <= limit;
}

Date Date::parse(std::string_view iso) {
  const auto digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-' ||
      !digits(iso.substr(0, 4)) || !digits(iso.substr(5, 2)) || !digits(iso.substr(8, 2)))
    throw std::invalid_argument("date must be ISO-8601 YYYY-MM-DD: '" + std::string(iso) + "'");
  const int y = (iso[0] - '0') * 1000 + (iso[1] - '0') * 100 + (iso[2] - '0') * 10 + (iso[3] - '0');
  const unsigned m = static_cast<unsigned>((iso[5] - '0') * 10 + (iso[6] - '0'));
  const unsigned d = static_cast<unsigned>((iso[8] - '0') * 10 + (iso[9] - '0'));
  if (!valid(y, m, d))
    throw std::invalid_argument("not a valid Gregorian date: '" + std::string(iso) + "'");
  return Date{y, m, d};
}

std::int64_t Date::serial() const {
  // Howard Hinnant's days_from_civil
  int y = year;
  y -= month <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::string Date::str() const {
  char buf[11];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year, month, day);
  return buf;
}

std::int64_t days_apart(const Date& a, const Date& b) {
  const std::int64_t diff = b.serial() - a.serial();
  return diff < 0 ? -diff : diff;
}

std::string_view to_string(Side side) {
  switch (side) {
    case Side::buy: return "buy";
    case Side::sell: return "sell";
    case Side::short_open: return "short";
    case Side::cover: return "cover";
  }
  return "?";
}

std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::market: return "market";
    case Origin::put_exercise: return "put-exercise";
    case Origin::call_exercise: return "call-exercise";
  }
  return "?";
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  for (;;) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string::npos) comma = line.size();
    std::string field = line.substr(pos, comma - pos);
    const auto first = field.find_first_not_of(" \t");
    const auto last = field.find_last_not_of(" \t");
    fields.push_back(first == std::string::npos ? std::string()
                                                : field.substr(first, last - first + 1));
    if (comma == line.size()) break;
    pos = comma + 1;
  }
  return fields;
}

std::int64_t parse_quantity(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("quantity is empty");
  std::int64_t value = 0;
  for (char c : text) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("quantity must be a positive integer: '" + text + "'");
    value = value * 10 + (c - '0');
    if (value > 1'000'000'000'000'000LL)
      throw std::invalid_argument("quantity out of range: '" + text + "'");
  }
  if (value < 1) throw std::invalid_argument("quantity must be >= 1");
  return value;
}

Side parse_side(const std::string& text) {
  if (text == "buy") return Side::buy;
  if (text == "sell") return Side::sell;
  if (text == "short") return Side::short_open;
  if (text == "cover") return Side::cover;
  throw std::invalid_argument("unknown side: '" + text + "'");
}

Origin parse_origin(const std::string& text) {
  if (text.empty() || text == "market") return Origin::market;
  if (text == "put-exercise") return Origin::put_exercise;
  if (text == "call-exercise") return Origin::call_exercise;
  throw std::invalid_argument("unknown origin: '" + text + "'");
}

}  // namespace

std::vector<Trade> parse_ledger(std::istream& source) {
  std::string line;
  if (!std::getline(source, line)) throw LedgerError("missing header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv(line);
  const std::vector<std::string> base{"date", "asset", "side", "quantity", "price"};
  const bool base_ok = header.size() >= 5 && std::equal(base.begin(), base.end(), header.begin());
  const bool origin_ok = header.size() == 5 || (header.size() == 6 && header[5] == "origin");
  if (!base_ok || !origin_ok)
    throw LedgerError("line 1: expected header date,asset,side,quantity,price[,origin]");

  std::vector<Trade> trades;
  std::size_t line_no = 1;
  std::size_t row = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = split_csv(line);
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (fields.size() != 5 && fields.size() != 6)
      throw LedgerError(where + "expected 5 or 6 fields, got " + std::to_string(fields.size()));
    Trade trade;
    trade.id = "t" + std::to_string(++row);
    try {
      trade.date = Date::parse(fields[0]);
      if (fields[1].empty()) throw std::invalid_argument("asset id is empty");
      trade.asset = fields[1];
      trade.side = parse_side(fields[2]);
      trade.quantity = parse_quantity(fields[3]);
      trade.price = exactnum::parse_decimal(fields[4]);
      if (trade.price <= 0) throw std::invalid_argument("price must be positive");
      trade.origin = parse_origin(fields.size() == 6 ? fields[5] : std::string());
    } catch (const std::invalid_argument& e) {
      throw LedgerError(where + e.what());
    }
    trades.push_back(std::move(trade));
  }
  std::stable_sort(trades.begin(), trades.end(),
                   [](const Trade& a, const Trade& b) { return a.date < b.date; });
  return trades;
}

namespace {

struct BookLot {
  std::size_t open_trade;
  Date open_date;
  Date holding_start;
  std::int64_t qty;
  Rat basis;
  bool adjusted;
};

struct Replacement {
  std::size_t trade_index;
  std::int64_t capacity;
};

struct PendingSplit {
  std::int64_t qty;
  Rat new_basis;
  Date holding_start;
};

struct AssetState {
  std::deque<BookLot> long_book;
  std::deque<BookLot> short_book;
  std::vector<Replacement> buy_acquisitions;    // replacement pool for long losses
  std::vector<Replacement> short_acquisitions;  // replacement pool for short losses
  Rat gains;
  Rat gross_loss;
  Rat disallowed;
};

struct EngineResult {
  std::vector<WashSaleAdjustment> adjustments;
  std::vector<Lot> open_lots;
  GainReport report;
};

// Converts `qty` not-yet-adjusted shares of the given acquisition into an
// adjusted sub-lot placed ahead of the remainder, so FIFO closes the
// adjusted shares first.
void carve_adjusted(std::deque<BookLot>& book, std::size_t acq_index, std::int64_t qty,
                    const Rat& new_basis, const Date& holding_start,
                    const std::string& replacement_id, std::vector<std::string>& notes) {
  std::int64_t remaining = qty;
  for (auto it = book.begin(); it != book.end() && remaining > 0; ++it) {
    if (it->open_trade != acq_index || it->adjusted) continue;
    const std::int64_t m = std::min(remaining, it->qty);
    if (m == it->qty) {
      it->adjusted = true;
      it->basis = new_basis;
      it->holding_start = holding_start;
    } else {
      it->qty -= m;
      const BookLot adjusted{acq_index, it->open_date, holding_start, m, new_basis, true};
      it = book.insert(it, adjusted);
      ++it;
    }
    remaining -= m;
  }
  if (remaining > 0)
    notes.push_back("adjustment to " + replacement_id + ": " + std::to_string(remaining) +
                    " matched replacement share(s) were already closed; the basis "
                    "adjustment applies to the still-open shares only");
}

EngineResult run_engine(const std::vector<Trade>& trades) {
  for (std::size_t i = 0; i < trades.size(); ++i) {
    if (trades[i].quantity < 1)
      throw LedgerError("trade " + trades[i].id + ": quantity must be >= 1");
    if (trades[i].price <= 0)
      throw LedgerError("trade " + trades[i].id + ": price must be positive");
    if (i > 0 && trades[i].date < trades[i - 1].date)
      throw LedgerError("trades must be sorted chronologically");
  }

  std::map<std::string, AssetState> assets;
  for (std::size_t i = 0; i < trades.size(); ++i) {
    auto& state = assets[trades[i].asset];
    if (trades[i].side == Side::buy)
      state.buy_acquisitions.push_back({i, trades[i].quantity});
    else if (trades[i].side == Side::short_open)
      state.short_acquisitions.push_back({i, trades[i].quantity});
  }

  std::map<std::size_t, std::vector<PendingSplit>> pending;
  EngineResult result;
  auto& report = result.report;

  for (std::size_t i = 0; i < trades.size(); ++i) {
    const Trade& trade = trades[i];
    auto& state = assets[trade.asset];
    const bool opening = trade.side == Side::buy || trade.side == Side::short_open;
    auto& book = (trade.side == Side::buy || trade.side == Side::sell) ? state.long_book
                                                                       : state.short_book;
    if (opening) {
      std::int64_t remaining = trade.quantity;
      if (auto it = pending.find(i); it != pending.end()) {
        for (const PendingSplit& split : it->second) {
          book.push_back({i, trade.date, split.holding_start, split.qty, split.new_basis, true});
          remaining -= split.qty;
        }
        pending.erase(it);
      }
      if (remaining > 0) book.push_back({i, trade.date, trade.date, remaining, trade.price, false});
      continue;
    }

    const bool closing_long = trade.side == Side::sell;
    std::int64_t remaining = trade.quantity;
    while (remaining > 0) {
      if (book.empty())
        throw LedgerError("trade " + trade.id + ": " + std::string(to_string(trade.side)) +
                          " of " + std::to_string(remaining) + " share(s) exceeds the open " +
                          (closing_long ? "long" : "short") + " quantity in " + trade.asset);
      const BookLot lot = book.front();  // copy: matching below may reshape the book
      const std::int64_t q = std::min(remaining, lot.qty);
      if (q == lot.qty)
        book.pop_front();
      else
        book.front().qty -= q;
      remaining -= q;

      const Rat amount = closing_long ? (trade.price - lot.basis) * q
                                      : (lot.basis - trade.price) * q;
      report.realizations.push_back(
          {trade.asset, trade.id, trades[lot.open_trade].id, lot.holding_start, trade.date, q,
           amount, trade.date.serial() - lot.holding_start.serial() > 365});
      if (lot.adjusted && q < lot.qty)
        report.notes.push_back("trade " + trade.id + ": partial sale of wash-adjusted lot " +
                               trades[lot.open_trade].id +
                               "; holding-period reset applies per-share");
      if (amount >= 0) {
        state.gains += amount;
        continue;
      }

      const Rat loss_per_share = closing_long ? lot.basis - trade.price : trade.price - lot.basis;
      state.gross_loss += -amount;
      std::int64_t to_match = q;
      auto& pool = closing_long ? state.buy_acquisitions : state.short_acquisitions;
      for (auto& candidate : pool) {
        if (to_match == 0) break;
        if (candidate.capacity == 0 || candidate.trade_index == lot.open_trade) continue;
        if (days_apart(trades[candidate.trade_index].date, trade.date) > 30) continue;
        const std::int64_t matched = std::min(to_match, candidate.capacity);
        const Rat new_basis = trades[candidate.trade_index].price + (lot.basis - trade.price);
        result.adjustments.push_back({trade.id, trades[candidate.trade_index].id,
                                      loss_per_share * matched, matched, new_basis,
                                      lot.holding_start});
        state.disallowed += loss_per_share * matched;
        candidate.capacity -= matched;
        to_match -= matched;
        if (candidate.trade_index > i) {
          pending[candidate.trade_index].push_back({matched, new_basis, lot.holding_start});
        } else {
          carve_adjusted(book, candidate.trade_index, matched, new_basis, lot.holding_start,
                         trades[candidate.trade_index].id, report.notes);
        }
      }
    }
  }

  for (const auto& [asset, state] : assets) {
    const Rat allowed = state.gross_loss - state.disallowed;
    const Rat realized = state.gains - allowed;
    report.assets.push_back(
        {asset, realized, allowed, state.disallowed, round_tax_amount(realized)});
    report.realized_total += realized;
    report.allowed_loss_total += allowed;
    report.disallowed_loss_total += state.disallowed;
    for (const auto* book : {&state.long_book, &state.short_book}) {
      const bool is_long = book == &state.long_book;
      for (const BookLot& lot : *book)
        result.open_lots.push_back({asset, lot.open_date, lot.qty, lot.basis,
                                    is_long ? Direction::long_position
                                            : Direction::short_position,
                                    lot.holding_start, trades[lot.open_trade].id});
    }
  }
  report.taxable_rounded_total = round_tax_amount(report.realized_total);
  return result;
}

}  // namespace

std::vector<WashSaleAdjustment> detect_wash_sales(const std::vector<Trade>& trades) {
  return run_engine(trades).adjustments;
}

ApplyResult apply_adjustments(const std::vector<Trade>& trades,
                              const std::vector<WashSaleAdjustment>& adjustments) {
  EngineResult result = run_engine(trades);
  if (result.adjustments != adjustments)
    throw LedgerError("adjustment set does not match this ledger; re-run detection");
  return ApplyResult{std::move(result.open_lots), std::move(result.report)};
}

BigInt round_tax_amount(const Rat& amount) {
  BigInt num = boost::multiprecision::numerator(amount);
  const BigInt& den = boost::multiprecision::denominator(amount);
  const bool negative = num < 0;
  if (negative) num = -num;
  BigInt whole = num / den;
  const BigInt rem = num % den;
  if (2 * rem > den) ++whole;  // cents above 50 round away from zero
  return negative ? BigInt(-whole) : whole;
}

std::string adjustments_to_csv(const std::vector<WashSaleAdjustment>& adjustments) {
  std::string out =
      "loss_trade_id,replacement_trade_id,disallowed_loss,matched_quantity,"
      "new_basis_per_share,holding_period_start\n";
  for (const auto& a : adjustments) {
    out += a.loss_trade_id + ',' + a.replacement_trade_id + ',' +
           rat_to_string(a.disallowed_loss) + ',' + std::to_string(a.matched_quantity) + ',' +
           rat_to_string(a.new_basis_per_share) + ',' + a.holding_period_start.str() + '\n';
  }
  return out;
}

namespace {

nlohmann::ordered_json taxable_json(const BigInt& value) {
  if (value >= std::numeric_limits<long long>::min() &&
      value <= std::numeric_limits<long long>::max())
    return value.convert_to<long long>();
  return value.str();
}

}  // namespace

std::string report_to_json(const GainReport& report) {
  nlohmann::ordered_json j;
  j["assets"] = nlohmann::ordered_json::array();
  for (const auto& a : report.assets) {
    j["assets"].push_back({{"asset", a.asset},
                           {"realized", rat_to_string(a.realized)},
                           {"allowed_loss", rat_to_string(a.allowed_loss)},
                           {"disallowed_loss", rat_to_string(a.disallowed_loss)},
                           {"taxable_rounded", taxable_json(a.taxable_rounded)}});
  }
  j["total"] = {{"realized", rat_to_string(report.realized_total)},
                {"allowed_loss", rat_to_string(report.allowed_loss_total)},
                {"disallowed_loss", rat_to_string(report.disallowed_loss_total)},
                {"taxable_rounded", taxable_json(report.taxable_rounded_total)}};
  j["realizations"] = nlohmann::ordered_json::array();
  for (const auto& r : report.realizations) {
    j["realizations"].push_back({{"asset", r.asset},
                                 {"close_trade_id", r.close_trade_id},
                                 {"open_trade_id", r.open_trade_id},
                                 {"holding_period_start", r.holding_period_start.str()},
                                 {"close_date", r.close_date.str()},
                                 {"quantity", r.quantity},
                                 {"amount", rat_to_string(r.amount)},
                                 {"long_term", r.long_term}});
  }
  j["notes"] = report.notes;
  return j.dump(2);
}

}  // namespace washprob::ledger
