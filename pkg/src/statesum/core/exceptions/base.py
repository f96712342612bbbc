class StateSumError(Exception):
    def __init__(self, message: str = "State-sum computation failed.") -> None:
        self.message = message
        super().__init__(self.message)
