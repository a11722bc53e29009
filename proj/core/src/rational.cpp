#include "tccc/rational.hpp"

#include "tccc/errors.hpp"

#include <cctype>

namespace tccc {

namespace {

Integer parse_integer(std::string_view text, std::string_view whole)
{
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        negative = text[pos] == '-';
        ++pos;
    }
    if (pos == text.size())
        throw InputError("malformed rational '" + std::string(whole) + "'");
    for (std::size_t i = pos; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw InputError("malformed rational '" + std::string(whole) + "'");
    }
    Integer value(std::string(text.substr(pos)));
    return negative ? Integer(-value) : value;
}

std::string_view trim(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    return text;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const std::string_view body = trim(text);
    const auto slash = body.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(body, text));
    const Integer num = parse_integer(trim(body.substr(0, slash)), text);
    const Integer den = parse_integer(trim(body.substr(slash + 1)), text);
    if (den == 0)
        throw InputError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& value)
{
    if (denominator_of(value) == 1)
        return numerator_of(value).str();
    return numerator_of(value).str() + "/" + denominator_of(value).str();
}

Integer floor(const Rational& value)
{
    const Integer num = numerator_of(value);
    const Integer den = denominator_of(value);
    Integer q = num / den;
    if (num % den != 0 && num < 0)
        q -= 1;
    return q;
}

Integer ceil(const Rational& value)
{
    return -floor(-value);
}

bool is_integer(const Rational& value)
{
    return denominator_of(value) == 1;
}

} // namespace tccc
