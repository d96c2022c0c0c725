#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace epfnot {

// Error category decides the CLI exit code: Config -> 1, Data -> 2, Runtime -> 3.
enum class ErrorKind { Config, Data, Runtime };

// All library errors carry a short machine-readable code ("MissingColumn",
// "SeriesTooShort", ...) next to the human-readable message.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), kind_(kind), code_(std::move(code)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& code() const noexcept { return code_; }

private:
    ErrorKind kind_;
    std::string code_;
};

[[noreturn]] inline void throw_config(const std::string& code, const std::string& msg) {
    throw Error(ErrorKind::Config, code, msg);
}
[[noreturn]] inline void throw_data(const std::string& code, const std::string& msg) {
    throw Error(ErrorKind::Data, code, msg);
}
[[noreturn]] inline void throw_runtime(const std::string& code, const std::string& msg) {
    throw Error(ErrorKind::Runtime, code, msg);
}

// Calendar date with day-serial arithmetic (serial 0 = 1970-01-01).
// Self-contained so we do not depend on the incomplete <chrono> calendar
// support in older standard libraries.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    static Date parse(std::string_view iso);  // "YYYY-MM-DD"
    static Date from_serial(long serial);

    long serial() const noexcept;
    std::string iso() const;
    int weekday_mon1() const noexcept;  // 1=Monday .. 7=Sunday
    Date next() const { return from_serial(serial() + 1); }

    friend bool operator==(const Date&, const Date&) = default;
    friend auto operator<=>(const Date& a, const Date& b) { return a.serial() <=> b.serial(); }
};

long days_from_civil(int y, int m, int d) noexcept;

// splitmix64 finalizer; used to derive per-(strategy, day, hour) seeds so that
// results do not depend on scheduling order.
inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view tag,
                              std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t h = splitmix64(seed);
    for (char c : tag) h = splitmix64(h ^ static_cast<unsigned char>(c));
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    return h;
}

// Unbiased draw in [0, bound); rejection sampling keeps the result identical
// across standard library implementations, unlike uniform_int_distribution.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

}  // namespace epfnot
