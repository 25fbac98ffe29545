/** Minimal typings for the extension APIs this project touches. */
declare namespace chrome {
  namespace runtime {
    function sendMessage(message: unknown): Promise<unknown>;
    const onMessage: {
      addListener(
        callback: (
          message: unknown,
          sender: { url?: string; tab?: { id?: number; url?: string } },
          sendResponse: (response?: unknown) => void
        ) => boolean | void
      ): void;
    };
  }
  namespace tabs {
    function captureVisibleTab(): Promise<string>;
    function query(info: { active: boolean; currentWindow: boolean }):
      Promise<Array<{ id?: number; url?: string }>>;
  }
  namespace downloads {
    function download(options: { url: string; filename: string }): Promise<number>;
  }
}
