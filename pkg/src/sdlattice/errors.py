"""Exception types shared by the lattice, analysis and free-lattice modules."""


class LatticeError(Exception):
    pass


class CycleInCovers(LatticeError):
    def __init__(self, element):
        super().__init__(f"cover relation has a cycle through element {element}")
        self.element = element


class NotALattice(LatticeError):
    def __init__(self, x, y, kind="join"):
        super().__init__(f"elements {x} and {y} have no unique {kind}")
        self.x, self.y, self.kind = x, y, kind


class NotBounded(NotALattice):
    pass


class ElementOutOfRange(LatticeError, IndexError):
    pass


class NotIrreducible(LatticeError):
    pass


class NoCanonicalRep(LatticeError):
    def __init__(self, x):
        super().__init__(f"element {x} has no canonical join representation")
        self.x = x


class SizeTooLarge(LatticeError):
    pass


class NotSemidistributive(LatticeError):
    pass


class TrivialLattice(LatticeError):
    pass


class OrderTooSmall(LatticeError):
    pass


class NotAnInterval(LatticeError):
    pass


class UnknownName(LatticeError, KeyError):
    pass


class EmptyCover(LatticeError):
    pass


class RelationDoesNotHold(LatticeError):
    pass


class CycleTooShort(LatticeError):
    pass


class GeneratorCollision(LatticeError):
    pass


class TermSyntaxError(LatticeError, SyntaxError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position
