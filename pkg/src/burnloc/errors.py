"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input data violates a structural invariant (bad table, bad schema, bad symbol...)."""


class CatalogIncompleteError(LookupError):
    """A relation needs an action-catalog rule that was not declared.

    The message names the missing rule with its exact parameters; the engine
    never invents geometric identifications on its own.
    """

    def __init__(self, rule_kind: str, **params):
        self.rule_kind = rule_kind
        self.params = dict(params)
        detail = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        super().__init__(f"catalog incomplete: missing {rule_kind}({detail})")
