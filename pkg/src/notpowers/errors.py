"""Exception types. Every error that points at bad input names the offending indices."""


class GroupError(ValueError):
    pass


class MalformedTable(GroupError):
    pass


class NotClosed(GroupError):
    def __init__(self, row: int, col: int, value):
        self.row, self.col, self.value = row, col, value
        super().__init__(f"table[{row}][{col}] = {value!r} is not an element index")


class NoIdentity(GroupError):
    def __init__(self):
        super().__init__("no two-sided identity element in table")


class NoInverse(GroupError):
    def __init__(self, element: int):
        self.element = element
        super().__init__(f"element {element} has no two-sided inverse")


class NotAssociative(GroupError):
    def __init__(self, a: int, b: int, c: int):
        self.triple = (a, b, c)
        super().__init__(f"({a}*{b})*{c} != {a}*({b}*{c})")


class CapExceeded(GroupError):
    def __init__(self, what: str, cap: int):
        self.cap = cap
        super().__init__(f"{what} exceeds cap {cap}")


class NotNormal(GroupError):
    pass


class NotAutomorphism(GroupError):
    pass


class ActionNotHomomorphism(GroupError):
    pass


class InvalidParameters(GroupError):
    pass


class NotPrime(InvalidParameters):
    def __init__(self, p):
        self.p = p
        super().__init__(f"{p} is not prime")


class NotOddPrime(InvalidParameters):
    def __init__(self, p):
        self.p = p
        super().__init__(f"{p} is not an odd prime")


class PrimeDoesNotDivideOrder(InvalidParameters):
    def __init__(self, p, order):
        super().__init__(f"{p} does not divide |G| = {order}")


class NoSuchPrime(GroupError):
    """No prime divisor p of k with 0 < n_p <= n_k; contradicts the k-to-prime reduction."""


class ParseError(GroupError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None, source: str = ""):
        self.line, self.col, self.source = line, col, source
        where = source
        if line is not None:
            where += f":{line}" + (f":{col}" if col is not None else "")
        super().__init__(f"{where}: {message}" if where else message)
